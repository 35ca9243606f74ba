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

#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "demonlab/csv.hpp"
#include "demonlab/markov.hpp"

namespace demonlab::markov {

// Whitespace-separated rows, one matrix row per non-blank line. Lines
// starting with '#' are skipped.
inline RateMatrix read_rate_matrix_text(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      detail::require(used == tok.size(), "rate matrix: bad number '" + tok + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return RateMatrix::from_rows(rows);
}

// {"rates": [[...], [...], ...]}
inline RateMatrix read_rate_matrix_json(const nlohmann::json& doc) {
  detail::require(doc.is_object() && doc.contains("rates"), "rate matrix JSON: missing \"rates\"");
  const auto& arr = doc.at("rates");
  detail::require(arr.is_array(), "rate matrix JSON: \"rates\" must be an array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& r : arr) {
    detail::require(r.is_array(), "rate matrix JSON: each row must be an array");
    std::vector<double> row;
    for (const auto& v : r) {
      detail::require(v.is_number(), "rate matrix JSON: non-numeric entry");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return RateMatrix::from_rows(rows);
}

inline RateMatrix read_rate_matrix_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input(std::string("rate matrix JSON: ") + e.what());
  }
  return read_rate_matrix_json(doc);
}

// Format chosen by extension: .json is JSON, anything else plain text.
inline RateMatrix load_rate_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot open rate matrix file " + path.string());
  if (path.extension() == ".json") return read_rate_matrix_json(in);
  return read_rate_matrix_text(in);
}

inline nlohmann::ordered_json to_json(const HTheoremReport& rep) {
  nlohmann::ordered_json j;
  j["t"] = rep.times;
  j["S"] = rep.entropy;
  j["dSdt"] = rep.production_rate;
  j["dist_to_eq"] = rep.dist_to_eq;
  j["equilibrium"] = std::vector<double>(rep.equilibrium.vector().begin(),
                                         rep.equilibrium.vector().end());
  j["monotone"] = rep.monotone;
  j["min_dSdt"] = rep.min_production_rate;
  j["terminal_distance"] = rep.terminal_distance;
  return j;
}

inline void write_csv(std::ostream& os, const HTheoremReport& rep) {
  csv::Writer w(os);
  w.header({"t", "S", "dSdt", "dist_to_eq"});
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    w.row({rep.times[i], rep.entropy[i], rep.production_rate[i], rep.dist_to_eq[i]});
}

}  // namespace demonlab::markov
