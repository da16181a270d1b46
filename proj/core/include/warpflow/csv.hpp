#ifndef WARPFLOW_CSV_HPP
#define WARPFLOW_CSV_HPP

#include <iosfwd>
#include <vector>

#include "warpflow/records.hpp"

namespace warpflow {

/// Streams the fixed-schema record CSV (17 significant digits per value).
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& os);
  void write(const StepRecord& record);

private:
  std::ostream* os_;
};

std::vector<StepRecord> read_record_csv(std::istream& is);

} // namespace warpflow

#endif
