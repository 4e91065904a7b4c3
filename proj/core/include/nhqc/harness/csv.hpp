#pragma once

// CSV dialect: comma separated, '.' decimal point, header row, LF line endings,
// numbers printed with 12 significant digits. Text cells may not contain
// commas, quotes or newlines.

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nhqc::harness {

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(std::string_view name) const;
  double number(std::size_t row, std::string_view column) const;
  const std::string& text(std::size_t row, std::string_view column) const;

  friend bool operator==(const Table&, const Table&) = default;
};

std::string format_number(double v);
std::string to_csv(const Table& table);
void write_csv(const Table& table, std::ostream& out);
// Writes to `path`, or to stdout when path is empty or "-".
void write_csv_file(const Table& table, const std::string& path);

Table parse_csv(std::string_view text);
Table read_csv_file(const std::string& path);

}  // namespace nhqc::harness
