#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hpmsim::io {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
  bool operator==(const Column&) const = default;
};

/*!
 * Named rectangular table of numeric cells with a unit per column and an
 * ordered key/value metadata block.
 */
class ResultTable {
 public:
  ResultTable() = default;
  ResultTable(std::string name, std::vector<Column> columns) : name_(std::move(name)), columns_(std::move(columns)) {
    for (const auto& c : columns_)
      if (c.unit.empty()) throw std::invalid_argument("column '" + c.name + "' has no unit");
  }

  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  void add_row(std::vector<double> row) {
    if (row.size() != columns_.size())
      throw std::invalid_argument("table '" + name_ + "': row has " + std::to_string(row.size()) +
                                  " cells, expected " + std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
  }

  //! Replaces an existing key in place, otherwise appends.
  void set_meta(const std::string& key, std::string value) {
    for (auto& kv : metadata_) {
      if (kv.first == key) {
        kv.second = std::move(value);
        return;
      }
    }
    metadata_.emplace_back(key, std::move(value));
  }

  const std::string* meta(const std::string& key) const {
    for (const auto& kv : metadata_)
      if (kv.first == key) return &kv.second;
    return nullptr;
  }

  void erase_meta(const std::string& key) {
    std::erase_if(metadata_, [&](const auto& kv) { return kv.first == key; });
  }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i].name == name) return i;
    throw std::out_of_range("table '" + name_ + "' has no column '" + name + "'");
  }

  std::vector<double> column(const std::string& name) const {
    const std::size_t i = column_index(name);
    std::vector<double> v;
    v.reserve(rows_.size());
    for (const auto& r : rows_) v.push_back(r[i]);
    return v;
  }

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

enum class Format { csv, json };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected csv or json)");
}

//! Shortest representation that round-trips exactly.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

//------------------------------------------------------------------------//
// CSV: '# key: value' metadata lines, a 'name [unit]' header, LF endings.

inline void emit_csv(const ResultTable& t, std::ostream& os) {
  os << "# table: " << t.name() << '\n';
  for (const auto& [k, v] : t.metadata()) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns().size(); ++i) {
    if (i) os << ',';
    os << t.columns()[i].name << " [" << t.columns()[i].unit << ']';
  }
  os << '\n';
  for (const auto& row : t.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i]);
    }
    os << '\n';
  }
}

inline std::vector<ResultTable> parse_csv(std::istream& is) {
  std::vector<ResultTable> tables;
  std::string line;
  std::string name;
  std::vector<std::pair<std::string, std::string>> meta;
  bool in_body = false;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) {
      in_body = false;
      continue;
    }
    if (line[0] == '#') {
      if (in_body) in_body = false;
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      std::string key = line.substr(2, colon - 2);
      std::string value = line.substr(colon + 2);
      if (key == "table") {
        name = value;
        meta.clear();
      } else {
        meta.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (!in_body) {
      std::vector<Column> cols;
      for (const auto& c : cells) {
        const auto open = c.rfind(" [");
        if (open == std::string::npos || c.back() != ']')
          throw IoError("csv line " + std::to_string(line_no) + ": header cell '" + c + "' lacks a unit");
        cols.push_back({c.substr(0, open), c.substr(open + 2, c.size() - open - 3)});
      }
      ResultTable t(name, std::move(cols));
      for (auto& kv : meta) t.set_meta(kv.first, kv.second);
      tables.push_back(std::move(t));
      in_body = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c));
    tables.back().add_row(std::move(row));
  }
  return tables;
}

//------------------------------------------------------------------------//
// JSON: {"name", "metadata", "columns", "rows"}; NaN cells become null.

inline nlohmann::ordered_json to_json(const ResultTable& t) {
  nlohmann::ordered_json j;
  j["name"] = t.name();
  auto& meta = j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata()) meta[k] = v;
  auto& cols = j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : t.columns()) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows()) {
    auto jr = nlohmann::ordered_json::array();
    for (double v : r) {
      if (std::isfinite(v))
        jr.push_back(v);
      else
        jr.push_back(nullptr);
    }
    rows.push_back(std::move(jr));
  }
  return j;
}

inline ResultTable from_json(const nlohmann::ordered_json& j) {
  std::vector<Column> cols;
  for (const auto& c : j.at("columns")) cols.push_back({c.at("name"), c.at("unit")});
  ResultTable t(j.at("name").get<std::string>(), std::move(cols));
  for (const auto& [k, v] : j.at("metadata").items()) t.set_meta(k, v.get<std::string>());
  for (const auto& r : j.at("rows")) {
    std::vector<double> row;
    for (const auto& v : r) row.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
    t.add_row(std::move(row));
  }
  return t;
}

inline void emit_json(const std::vector<ResultTable>& tables, std::ostream& os) {
  if (tables.size() == 1) {
    os << to_json(tables.front()).dump(2) << '\n';
    return;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : tables) arr.push_back(to_json(t));
  os << arr.dump(2) << '\n';
}

//! Several CSV tables are separated by a blank line.
inline void emit(const std::vector<ResultTable>& tables, Format format, std::ostream& os) {
  if (format == Format::json) {
    emit_json(tables, os);
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) os << '\n';
    emit_csv(tables[i], os);
  }
}

inline void emit_to_file(const std::vector<ResultTable>& tables, Format format, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  emit(tables, format, f);
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace hpmsim::io
