#include "nhqc/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nhqc/errors.hpp"

namespace nhqc::harness {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw ShapeError("Table::add_row: " + std::to_string(row.size()) + " cells for " +
                     std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ConfigError("Table: no column named '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::string_view column) const {
  const auto& cell = rows.at(row).at(column_index(column));
  if (const auto* v = std::get_if<double>(&cell)) return *v;
  throw ConfigError("Table: cell in column '" + std::string(column) + "' is not numeric");
}

const std::string& Table::text(std::size_t row, std::string_view column) const {
  const auto& cell = rows.at(row).at(column_index(column));
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  throw ConfigError("Table: cell in column '" + std::string(column) + "' is not text");
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void check_text(const std::string& s) {
  if (s.find_first_of(",\"\n\r") != std::string::npos)
    throw ValidationError("CSV text cell contains a reserved character: " + s);
}

Cell parse_cell(const std::string& s) {
  if (!s.empty()) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin + s.size()) return v;
  }
  return s;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    check_text(table.columns[i]);
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* v = std::get_if<double>(&row[i])) {
        out << format_number(*v);
      } else {
        const auto& s = std::get<std::string>(row[i]);
        check_text(s);
        out << s;
      }
    }
    out << '\n';
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  write_csv(table, os);
  return os.str();
}

void write_csv_file(const Table& table, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(table, std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(table, f);
}

Table parse_csv(std::string_view text) {
  Table t;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    auto fields = split(line);
    if (header) {
      t.columns = std::move(fields);
      header = false;
      continue;
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    t.add_row(std::move(row));
  }
  return t;
}

Table read_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_csv(os.str());
}

}  // namespace nhqc::harness
