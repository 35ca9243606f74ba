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

#include "demonlab/qiur.hpp"

namespace demonlab::qiur {

/// Reads a wavefunction from CSV with columns x, re, im (a header row is
/// optional). Samples must be uniformly spaced. With `renormalize` the
/// amplitudes are rescaled; otherwise they must already be normalized.
inline WavefunctionGrid read_wavefunction_csv(std::istream& in, bool renormalize = false) {
  std::vector<double> xs;
  std::vector<complex> amps;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    detail::require(cols.size() == 3, "wavefunction CSV: expected 3 columns (x, re, im)");
    double v[3];
    bool numeric = true;
    for (int c = 0; c < 3; ++c) {
      std::size_t used = 0;
      try {
        v[c] = std::stod(cols[c], &used);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
      const auto rest = cols[c].find_first_not_of(" \t", used);
      if (rest != std::string::npos) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      detail::require(first, "wavefunction CSV: non-numeric row");
      first = false;
      continue;
    }
    first = false;
    xs.push_back(v[0]);
    amps.emplace_back(v[1], v[2]);
  }
  detail::require(xs.size() >= 2, "wavefunction CSV: need at least 2 samples");
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t j = 1; j < xs.size(); ++j)
    detail::require(std::abs((xs[j] - xs[j - 1]) - dx) <= 1e-9 * std::abs(dx),
                    "wavefunction CSV: samples are not uniformly spaced");
  if (renormalize) return WavefunctionGrid::normalized(xs.front(), dx, std::move(amps));
  return WavefunctionGrid(xs.front(), dx, std::move(amps));
}

inline WavefunctionGrid load_wavefunction_csv(const std::filesystem::path& path, bool renormalize = false) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot open wavefunction file " + path.string());
  return read_wavefunction_csv(in, renormalize);
}

inline nlohmann::ordered_json to_json(const JointInformation& r) {
  nlohmann::ordered_json j;
  j["I_x"] = r.position;
  j["I_p"] = r.momentum;
  j["joint"] = r.joint;
  j["bound"] = r.bound;
  j["satisfied"] = r.satisfied;
  return j;
}

}  // namespace demonlab::qiur
