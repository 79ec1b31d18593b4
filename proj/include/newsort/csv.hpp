#pragma once

// Small CSV helpers shared by the harness, the fixtures and the CLI.
// All numeric output is deterministic: doubles are printed in their shortest
// round-trip form, sweep parameters at up to 6 significant digits.

#include <charconv>
#include <cmath>
#include <limits>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "newsort/keys.hpp"

namespace newsort::csv {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

/// Sweep parameters: up to 6 significant digits, trailing noise dropped.
inline std::string format_param(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return std::string(buf);
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + text + "'");
  }
  return value;
}

inline std::int64_t parse_int(const std::string& text, std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError("line " + std::to_string(line_no) + ": not an integer: '" + text + "'");
  }
  return value;
}

// ---------------------------------------------------------------------------
// key files: header `key`, one key per row

inline void write_keys(std::ostream& out, const KeyArray& keys) {
  out << "key\n";
  if (const auto* ints = std::get_if<IntKeys>(&keys)) {
    for (auto v : *ints) out << v << '\n';
  } else {
    for (double v : std::get<RealKeys>(keys)) out << format_double(v) << '\n';
  }
}

inline KeyArray read_keys(std::istream& in, KeyMode mode) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("line 1: empty key file, expected header 'key'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "key") throw ParseError("line 1: expected header 'key', got '" + line + "'");

  IntKeys ints;
  RealKeys reals;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (mode == KeyMode::integer) {
      ints.push_back(parse_int(line, line_no));
    } else {
      const double v = parse_double(line, line_no);
      if (std::isnan(v)) throw ParseError("line " + std::to_string(line_no) + ": NaN key rejected");
      reals.push_back(v);
    }
  }
  if (mode == KeyMode::integer) return ints;
  return reals;
}

// ---------------------------------------------------------------------------
// generic numeric table with a named header, e.g. sweep summaries

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw ParseError("no column named '" + name + "'");
  }

  std::vector<double> column(const std::string& name) const {
    const std::size_t idx = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[idx]);
    return out;
  }
};

/// Strict parsing rejects any non-numeric field; lenient parsing stores NaN
/// for them (fit reports carry a textual verdict column).
inline Table read_table(std::istream& in, bool strict = true) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: empty file, expected a CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.columns = split_fields(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.columns.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.columns.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      if (strict) {
        row.push_back(parse_double(f, line_no));
      } else {
        try {
          row.push_back(parse_double(f, line_no));
        } catch (const ParseError&) {
          row.push_back(std::numeric_limits<double>::quiet_NaN());
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline Table read_table_file(const std::string& path, bool strict = true) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_table(in, strict);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace newsort::csv
