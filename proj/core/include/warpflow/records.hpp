#ifndef WARPFLOW_RECORDS_HPP
#define WARPFLOW_RECORDS_HPP

#include <array>
#include <string>

namespace warpflow {

/// One row of the run record stream.  Column order is the versioned CSV
/// schema; keep the two lists in sync.
struct StepRecord {
  double t = 0.0;
  double dt = 0.0;
  double area = 0.0;
  double volume = 0.0;
  double w2 = 0.0;
  double osc_u = 0.0;
  double osc_theta = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double speed_max = 0.0;
  double umbilicity = 0.0;
  double mink1_residual = 0.0;
  double mink2_residual = 0.0;

  static constexpr int column_count = 15;
  static const char* csv_header(); // comma-joined column names
  std::array<double, column_count> columns() const;
  static StepRecord from_columns(const std::array<double, column_count>& c);
};

} // namespace warpflow

#endif
