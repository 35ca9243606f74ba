// Copyright 2026 The demonlab Authors
//
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

#pragma once

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace demonlab::csv {

// Shortest representation that round-trips; locale independent.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

// RFC 4180: quote fields containing comma, quote, CR or LF; double
// embedded quotes.
inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void header(std::initializer_list<std::string_view> cols) {
    row_strings(std::vector<std::string>(cols.begin(), cols.end()));
  }

  void row_strings(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << quote(fields[i]);
    }
    os_ << "\r\n";
  }

  // A cell is either text or a number.
  struct Cell {
    Cell(double v) : text(format_number(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    Cell(long v) : text(std::to_string(v)) {}
    Cell(long long v) : text(std::to_string(v)) {}
    Cell(unsigned long v) : text(std::to_string(v)) {}
    Cell(unsigned long long v) : text(std::to_string(v)) {}
    Cell(bool v) : text(v ? "true" : "false") {}
    Cell(const char* s) : text(s) {}
    Cell(std::string s) : text(std::move(s)) {}
    Cell(std::string_view s) : text(s) {}
    std::string text;
  };

  void row(std::initializer_list<Cell> cells) {
    std::vector<std::string> f;
    f.reserve(cells.size());
    for (const auto& c : cells) f.push_back(c.text);
    row_strings(f);
  }

 private:
  std::ostream& os_;
};

}  // namespace demonlab::csv
