#ifndef WARPFLOW_RUN_CONFIG_HPP
#define WARPFLOW_RUN_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "warpflow/flow.hpp"

namespace warpflow {

/// Flat dotted-key configuration for a run.  Text format: one `key = value`
/// per line, `#` comments, no environment overrides.
struct RunConfig {
  // space.*
  std::string warp_family = "sinh"; // sinh | cosh | lincomb | affine | poly
  double alpha = 1.0, beta = 0.0;   // lincomb coefficients
  double offset = 0.0;              // affine r + c
  std::vector<double> coeffs;       // poly coefficients, constant term first
  double domain_a = 0.0, domain_b = 4.0;
  std::string base = "torus2d"; // torus2d | axisym-sphere
  int resolution = 64;
  int n = 2;

  // flow.*
  std::string flow_type = "lcf-h2h1"; // lcf-h2h1 | imcf | gl
  double cfl = 0.2;
  double t_max = 10.0;
  double tol_converged = 1e-8;
  std::int64_t max_steps = 10'000'000;
  std::int64_t record_every = 1;

  // init.*
  std::string init_kind = "slice"; // slice | random
  double r0 = 1.0;
  double eps = 0.0;
  std::uint64_t seed = 0;

  // output.*
  std::string csv_path;
  std::string report_path;
  std::string checkpoint_path;
  std::int64_t checkpoint_every = 0;

  // sweep.*
  int workers = 2;

  static RunConfig parse(std::istream& is);
  static RunConfig parse_file(const std::string& path);

  /// Full validation against module preconditions; throws ConfigError with a
  /// dotted field path before any computation starts.
  void validate() const;

  WarpedSpace make_space() const;
  BaseGrid make_grid() const;
  FlowConfig make_flow_config() const;
  FlowType flow_type_enum() const;

  /// Canonical key-value rendering (used for digests and tests).
  std::string canonical() const;
};

} // namespace warpflow

#endif
