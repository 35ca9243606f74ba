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

#include <cmath>
#include <numbers>

#include "demonlab/errors.hpp"

namespace demonlab {

/// Physical constants used throughout the library.
///
/// The default is the reduced system k = h = 1, in which every entropy is
/// reported in nats and the entropic uncertainty bound is ln(e/2). The SI
/// preset carries the exact 2019 SI values of k and h.
struct UnitSystem {
  double k = 1.0;  // Boltzmann constant
  double h = 1.0;  // Planck constant

  constexpr double hbar() const { return h / (2.0 * std::numbers::pi); }

  void validate() const {
    detail::require(std::isfinite(k) && k > 0.0, "UnitSystem: k must be positive");
    detail::require(std::isfinite(h) && h > 0.0, "UnitSystem: h must be positive");
  }

  static constexpr UnitSystem reduced() { return {}; }
  static constexpr UnitSystem si() { return {1.380649e-23, 6.62607015e-34}; }
  // hbar = 1, the usual convention for quantum-mechanics test cases.
  static constexpr UnitSystem natural_hbar() { return {1.0, 2.0 * std::numbers::pi}; }
};

}  // namespace demonlab
