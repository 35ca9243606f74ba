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

// Maxwell's speed-sorting demon against the entropic uncertainty relation.
//
// Measuring a molecule's momentum with a photon of energy h nu_low << kT
// narrows sigma_p from p_rms = sqrt(3 m k T) to sqrt(3 m h nu_low). The
// minimum-uncertainty partner sigma_x = h / (4 pi sigma_p) then exceeds the
// largest door that still blocks thermal leakage, d = h / (4 pi p_rms), by
// the factor sqrt(kT / h nu_low) > 1.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "demonlab/errors.hpp"
#include "demonlab/qiur.hpp"
#include "demonlab/random.hpp"
#include "demonlab/units.hpp"

namespace demonlab::speed_demon {

struct GasSpec {
  double temperature = 1.0;
  double mass = 1.0;
  std::int64_t n_molecules = 1;

  void validate() const {
    detail::require(std::isfinite(temperature) && temperature > 0.0, "GasSpec: T must be > 0");
    detail::require(std::isfinite(mass) && mass > 0.0, "GasSpec: m must be > 0");
    detail::require(n_molecules >= 1, "GasSpec: need at least one molecule");
  }
};

struct ProbeSpec {
  double nu_low = 0.01;

  // Probe with h nu_low = k T / ratio.
  static ProbeSpec from_ratio(double ratio, const GasSpec& gas, const UnitSystem& units = {}) {
    detail::require(std::isfinite(ratio) && ratio > 0.0, "ProbeSpec: ratio kT/(h nu) must be > 0");
    return {units.k * gas.temperature / (ratio * units.h)};
  }

  void validate() const {
    detail::require(std::isfinite(nu_low) && nu_low > 0.0, "ProbeSpec: nu_low must be > 0");
  }

  double energy(const UnitSystem& units = {}) const { return units.h * nu_low; }

  // False outside the low-energy regime h nu_low < k T (a warning, not an error).
  bool low_energy(const GasSpec& gas, const UnitSystem& units = {}) const {
    return energy(units) < units.k * gas.temperature;
  }
};

struct SortingGeometry {
  double door_size = 1.0;

  void validate() const {
    detail::require(std::isfinite(door_size) && door_size > 0.0, "SortingGeometry: d must be > 0");
  }
};

inline double rms_momentum(const GasSpec& gas, const UnitSystem& units = {}) {
  gas.validate();
  units.validate();
  return std::sqrt(3.0 * gas.mass * units.k * gas.temperature);
}

inline double max_door_size(double sigma_p, const UnitSystem& units = {}) {
  detail::require(std::isfinite(sigma_p) && sigma_p > 0.0, "max_door_size: sigma_p must be > 0");
  units.validate();
  return units.h / (4.0 * std::numbers::pi * sigma_p);
}

// The pre-measurement spread of the door formula is taken as p_rms itself.
inline double max_door_size(const GasSpec& gas, const UnitSystem& units = {}) {
  return max_door_size(rms_momentum(gas, units), units);
}

struct Spreads {
  double sigma_p = 0.0;
  double sigma_x = 0.0;
  bool regime_warning = false;  // h nu_low >= k T
};

inline Spreads post_measurement_spreads(const GasSpec& gas, const ProbeSpec& probe,
                                        const UnitSystem& units = {}) {
  gas.validate();
  probe.validate();
  units.validate();
  Spreads s;
  s.sigma_p = std::sqrt(3.0 * gas.mass * units.h * probe.nu_low);
  s.sigma_x = units.h / (4.0 * std::numbers::pi * s.sigma_p);
  s.regime_warning = !probe.low_energy(gas, units);
  return s;
}

/// sigma_x (after measurement) / d (largest admissible door). Sorting is
/// infeasible when this exceeds 1.
inline double sorting_feasibility(const GasSpec& gas, const ProbeSpec& probe,
                                  const UnitSystem& units = {}) {
  return post_measurement_spreads(gas, probe, units).sigma_x / max_door_size(gas, units);
}

inline bool sorting_infeasible(double ratio) { return ratio > 1.0; }

struct SortingReport {
  std::int64_t attempts = 0;
  std::int64_t passages = 0;
  double empirical = 0.0;        // passages / attempts
  double analytic = 0.0;         // erf(d / (2 sqrt 2 sigma_x))
  double standard_error = 0.0;   // binomial
  double p_rms = 0.0;
  double door_size = 0.0;
  double max_door_size = 0.0;
  double sigma_p = 0.0;
  double sigma_x = 0.0;
  double feasibility_ratio = 0.0;
  bool infeasible = false;
  bool regime_warning = false;
  double injected_energy = 0.0;  // attempts * h nu_low
  // Per-molecule entropy bookkeeping, units of entropy.
  double momentum_entropy_change = 0.0;    // k [I(sigma_p) - I(p_rms)] < 0
  double delocalization_entropy = 0.0;     // k [I(sigma_x) - I(d_max)] > 0
  double sorting_usable_entropy_change = 0.0;  // their sum, zero

  bool within(double n_sigma) const {
    return std::abs(empirical - analytic) <= n_sigma * standard_error;
  }
};

namespace detail {

// k * differential entropy of a Gaussian momentum (or position) density of
// width sigma, evaluated on a grid.
inline double gaussian_grid_entropy(double sigma, bool momentum, const UnitSystem& units) {
  const std::size_t n = qiur::kDefaultSamples;
  const double width = 2.0 * qiur::kDefaultHalfSpanSigmas * sigma;
  const double step = width / static_cast<double>(n);
  auto g = [&](double x) {
    const double u = x / sigma;
    return std::exp(-0.25 * u * u);
  };
  if (momentum)
    return qiur::thermodynamic_entropy(qiur::MomentumGrid::sample(-0.5 * width, step, n, g), units);
  return units.k * qiur::differential_entropy(qiur::WavefunctionGrid::sample(-0.5 * width, step, n, g));
}

}  // namespace detail

/// Monte-Carlo passage test: each attempt places the measured molecule at a
/// Gaussian position of width sigma_x centred on the door and counts it as
/// through iff |x| < d/2. Attempt s draws from substream(seed, s).
inline SortingReport simulate_sorting(const GasSpec& gas, const ProbeSpec& probe,
                                      const SortingGeometry& geometry, std::int64_t n_attempts,
                                      std::uint64_t rng_seed, const UnitSystem& units = {}) {
  geometry.validate();
  demonlab::detail::require(n_attempts >= 1, "simulate_sorting: need at least one attempt");
  const Spreads spreads = post_measurement_spreads(gas, probe, units);

  SortingReport r;
  r.attempts = n_attempts;
  r.p_rms = rms_momentum(gas, units);
  r.door_size = geometry.door_size;
  r.max_door_size = max_door_size(r.p_rms, units);
  r.sigma_p = spreads.sigma_p;
  r.sigma_x = spreads.sigma_x;
  r.feasibility_ratio = spreads.sigma_x / r.max_door_size;
  r.infeasible = sorting_infeasible(r.feasibility_ratio);
  r.regime_warning = spreads.regime_warning;
  r.injected_energy = static_cast<double>(n_attempts) * probe.energy(units);

  const double half_door = 0.5 * geometry.door_size;
  for (std::int64_t s = 0; s < n_attempts; ++s) {
    auto eng = substream(rng_seed, static_cast<std::uint64_t>(s));
    std::normal_distribution<double> position(0.0, spreads.sigma_x);
    if (std::abs(position(eng)) < half_door) ++r.passages;
  }
  r.empirical = static_cast<double>(r.passages) / static_cast<double>(n_attempts);
  r.analytic = std::erf(geometry.door_size / (2.0 * std::numbers::sqrt2 * spreads.sigma_x));
  r.standard_error = std::sqrt(r.analytic * (1.0 - r.analytic) / static_cast<double>(n_attempts));

  r.momentum_entropy_change = detail::gaussian_grid_entropy(spreads.sigma_p, true, units) -
                              detail::gaussian_grid_entropy(r.p_rms, true, units);
  r.delocalization_entropy = detail::gaussian_grid_entropy(spreads.sigma_x, false, units) -
                             detail::gaussian_grid_entropy(r.max_door_size, false, units);
  r.sorting_usable_entropy_change = r.momentum_entropy_change + r.delocalization_entropy;
  return r;
}

}  // namespace demonlab::speed_demon
