// Copyright 2026 The scert authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCERT_CSV_HPP_
#define SCERT_CSV_HPP_

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scert/errors.hpp"

namespace scert {

// Numeric CSV tables: comma-separated, '.' decimal point, one optional
// header row detected by a non-numeric first token. All data rows must have
// the same number of columns. Parse errors carry 1-based line numbers.

struct CsvTable {
  std::optional<std::vector<std::string>> header;
  std::vector<std::vector<double>> rows;

  std::size_t columns() const {
    if (!rows.empty()) return rows.front().size();
    if (header) return header->size();
    return 0;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      tokens.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  tokens.push_back(trim(cur));
  return tokens;
}

inline bool parse_double(const std::string& token, double* out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size()) return false;
  *out = v;
  return true;
}

}  // namespace detail

inline CsvTable read_numeric_csv(std::istream& in, const std::string& source_name) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto tokens = detail::split_csv_line(line);
    double v = 0.0;
    if (first_content_line && !detail::parse_double(tokens.front(), &v)) {
      table.header = tokens;
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    std::vector<double> row;
    row.reserve(tokens.size());
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      if (!detail::parse_double(tokens[c], &v)) {
        throw data_error(source_name + ":" + std::to_string(line_no) + ": column " +
                         std::to_string(c + 1) + ": not a number: '" + tokens[c] + "'");
      }
      row.push_back(v);
    }
    if (!table.rows.empty() && row.size() != table.rows.front().size()) {
      throw data_error(source_name + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.rows.front().size()) + " columns, got " +
                       std::to_string(row.size()));
    }
    if (table.header && row.size() != table.header->size()) {
      throw data_error(source_name + ":" + std::to_string(line_no) +
                       ": column count differs from header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline CsvTable read_numeric_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "' for reading");
  return read_numeric_csv(in, path);
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace scert

#endif  // SCERT_CSV_HPP_
