#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catfab::io {

/// %.17g: shortest text that still round-trips any double exactly.
std::string format_double(double v);

/// In-memory CSV table. Cells hold already-formatted text; commas, quotes and
/// newlines are rejected on write (no quoting dialect).
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Header plus rows, comma-separated, LF line endings.
void write_csv(std::ostream& out, const CsvTable& table);

/// Inverse of write_csv. Throws std::invalid_argument on ragged rows.
CsvTable read_csv(std::istream& in);

}  // namespace catfab::io
