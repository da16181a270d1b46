#include "warpflow/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "warpflow/errors.hpp"

namespace warpflow {

CsvWriter::CsvWriter(std::ostream& os) : os_(&os) {
  *os_ << StepRecord::csv_header() << '\n';
  if (!*os_) throw IoError("csv stream failure while writing header");
}

void CsvWriter::write(const StepRecord& record) {
  char buf[64];
  const auto cols = record.columns();
  std::string line;
  line.reserve(cols.size() * 26);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", cols[i]);
    if (i) line += ',';
    line += buf;
  }
  line += '\n';
  *os_ << line;
  os_->flush(); // partial CSV must survive terminal flow errors
  if (!*os_) throw IoError("csv stream failure while writing record");
}

std::vector<StepRecord> read_record_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty record csv");
  if (line != StepRecord::csv_header())
    throw IoError("record csv header mismatch: '" + line + "'");
  std::vector<StepRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, StepRecord::column_count> cols{};
    std::size_t pos = 0;
    for (int c = 0; c < StepRecord::column_count; ++c) {
      const std::size_t next = line.find(',', pos);
      const std::string tok = line.substr(pos, next == std::string::npos ? next : next - pos);
      try {
        cols[static_cast<std::size_t>(c)] = std::stod(tok);
      } catch (const std::exception&) {
        throw IoError("record csv parse failure in '" + tok + "'");
      }
      if (next == std::string::npos) {
        if (c != StepRecord::column_count - 1)
          throw IoError("record csv row has too few columns");
        pos = line.size();
      } else {
        pos = next + 1;
      }
    }
    records.push_back(StepRecord::from_columns(cols));
  }
  return records;
}

} // namespace warpflow
