#include "gmc/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "gmc/error.hpp"
#include "json.hpp"

namespace gmc {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add_row(std::vector<Cell> row, std::string row_status) {
  if (row.size() != columns.size())
    throw Error(ErrorKind::input, "row has " + std::to_string(row.size()) + " cells, table has " +
                                      std::to_string(columns.size()) + " columns");
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (auto* d = std::get_if<double>(&row[c]); d && std::isnan(*d)) {
      row[c] = std::monostate{};
      if (row_status == "ok") row_status = "nan:" + columns[c];
    }
  }
  rows.push_back(std::move(row));
  status.push_back(std::move(row_status));
}

TableFormat parse_format(const std::string& s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "json") return TableFormat::json;
  throw Error(ErrorKind::input, "format: expected csv or json, got '" + s + "'");
}

namespace {

std::string cell_text(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double d) const { return std::isnan(d) ? "" : format_double(d); }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(V{}, c);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void csv_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_quote(fields[i]);
  }
  out += "\r\n";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  std::vector<std::string> head = t.columns;
  head.push_back("status");
  csv_line(out, head);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<std::string> f;
    for (const Cell& c : t.rows[r]) f.push_back(cell_text(c));
    f.push_back(t.status[r]);
    csv_line(out, f);
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const Cell& cell = t.rows[r][c];
      if (std::holds_alternative<std::monostate>(cell)) {
        obj[t.columns[c]] = nullptr;
      } else if (auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d))
          obj[t.columns[c]] = *d;
        else
          obj[t.columns[c]] = nullptr;
      } else if (auto* i = std::get_if<long long>(&cell)) {
        obj[t.columns[c]] = *i;
      } else {
        obj[t.columns[c]] = std::get<std::string>(cell);
      }
    }
    obj["status"] = t.status[r];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void emit_table(const Table& t, TableFormat format, const std::string& path) {
  const std::string text = format == TableFormat::csv ? to_csv(t) : to_json(t);
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

namespace {

// RFC 4180 record splitter
std::vector<std::vector<std::string>> parse_csv_records(const std::string& s) {
  std::vector<std::vector<std::string>> recs;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  std::size_t i = 0;
  auto end_field = [&] {
    rec.push_back(field);
    field.clear();
  };
  while (i < s.size()) {
    const char ch = s[i];
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        field += ch;
      }
      ++i;
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\r' || ch == '\n') {
      end_field();
      recs.push_back(std::move(rec));
      rec.clear();
      any = false;
      if (ch == '\r' && i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else {
      field += ch;
    }
    ++i;
  }
  if (quoted) throw Error(ErrorKind::io, "unterminated quoted CSV field");
  if (any) {
    end_field();
    recs.push_back(std::move(rec));
  }
  return recs;
}

}  // namespace

Table read_csv(const std::string& text) {
  const auto recs = parse_csv_records(text);
  if (recs.empty()) throw Error(ErrorKind::io, "CSV has no header");
  Table t;
  t.columns = recs[0];
  if (t.columns.empty() || t.columns.back() != "status")
    throw Error(ErrorKind::io, "CSV header lacks the status column");
  t.columns.pop_back();
  for (std::size_t r = 1; r < recs.size(); ++r) {
    if (recs[r].size() != t.columns.size() + 1) throw Error(ErrorKind::io, "ragged CSV row");
    std::vector<Cell> row;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (recs[r][c].empty())
        row.emplace_back(std::monostate{});
      else
        row.emplace_back(recs[r][c]);
    }
    t.rows.push_back(std::move(row));
    t.status.push_back(recs[r].back());
  }
  return t;
}

Table read_json(const std::string& text) {
  const auto arr = nlohmann::ordered_json::parse(text);
  if (!arr.is_array()) throw Error(ErrorKind::io, "JSON table must be an array");
  Table t;
  for (const auto& obj : arr) {
    if (t.columns.empty() && t.rows.empty())
      for (auto it = obj.begin(); it != obj.end(); ++it)
        if (it.key() != "status") t.columns.push_back(it.key());
    std::vector<Cell> row;
    for (const auto& col : t.columns) {
      const auto& v = obj.at(col);
      if (v.is_null())
        row.emplace_back(std::monostate{});
      else if (v.is_number_integer())
        row.emplace_back(v.get<long long>());
      else if (v.is_number())
        row.emplace_back(v.get<double>());
      else
        row.emplace_back(v.get<std::string>());
    }
    t.rows.push_back(std::move(row));
    t.status.push_back(obj.at("status").get<std::string>());
  }
  return t;
}

}  // namespace gmc
