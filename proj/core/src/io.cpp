#include "catfab/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace catfab::io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void check_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") != std::string::npos) {
    throw std::invalid_argument("CSV cell contains a reserved character: " +
                                cell);
  }
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    check_cell(cells[i]);
    if (i > 0) {
      out << ',';
    }
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
  write_row(out, table.columns);
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("CSV row width differs from header");
    }
    write_row(out, row);
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) {
      break;
    }
    auto cells = split_row(line);
    if (first) {
      table.columns = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.columns.size()) {
        throw std::invalid_argument("CSV row width differs from header");
      }
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace catfab::io
