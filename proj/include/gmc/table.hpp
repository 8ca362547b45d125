#pragma once

#include <string>
#include <variant>
#include <vector>

namespace gmc {

// null | double | integer | string
using Cell = std::variant<std::monostate, double, long long, std::string>;

// Every row carries a status. A NaN double cell is written as empty (CSV) or
// null (JSON) and turns an "ok" status into "nan:<column>".
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> status;

  void add_row(std::vector<Cell> row, std::string row_status = "ok");
};

enum class TableFormat { csv, json };
TableFormat parse_format(const std::string& s);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
// Writes to path; "-" means stdout.
void emit_table(const Table& t, TableFormat format, const std::string& path);

// Readers used for round-trip checks. CSV cells come back as strings (empty
// field -> null); JSON keeps number/string/null types.
Table read_csv(const std::string& text);
Table read_json(const std::string& text);

std::string format_double(double v);  // %.17g

}  // namespace gmc
