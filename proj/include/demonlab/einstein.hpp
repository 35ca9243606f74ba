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

// Volume-fluctuation entropy of a gas of independent components, the
// matching fluctuation probability, and the entropy balance of a demon that
// gathers information by scattering a photon.

#include <cmath>
#include <cstdint>
#include <limits>

#include "demonlab/errors.hpp"
#include "demonlab/random.hpp"
#include "demonlab/units.hpp"

namespace demonlab::einstein {

inline constexpr int kMaxMonteCarloComponents = 20;
inline constexpr std::int64_t kMinMonteCarloTrials = 10'000;

/// N independent components confined to V inside a reference volume V0.
struct FluctuationSpec {
  double n_components = 1.0;  // real N; integer for Monte Carlo
  double volume = 1.0;        // V
  double reference_volume = 1.0;  // V0
  bool allow_expansion = false;   // permit V > V0
  // For specs built from an energy: N = E / (h nu) before rounding.
  double energy_quanta = std::numeric_limits<double>::quiet_NaN();

  static FluctuationSpec from_energy(double energy, double nu, double volume, double reference_volume,
                                     const UnitSystem& units = {}) {
    units.validate();
    detail::require(std::isfinite(energy) && energy > 0.0, "FluctuationSpec: energy must be > 0");
    detail::require(std::isfinite(nu) && nu > 0.0, "FluctuationSpec: frequency must be > 0");
    const double quanta = energy / (units.h * nu);
    FluctuationSpec s{std::round(quanta), volume, reference_volume, false, quanta};
    s.validate();
    return s;
  }

  double volume_ratio() const { return volume / reference_volume; }

  // Integer component count used for point placement.
  int count() const { return static_cast<int>(std::llround(n_components)); }

  // E/(h nu) - count() for energy-derived specs, 0 otherwise.
  double rounding_remainder() const {
    return std::isnan(energy_quanta) ? 0.0 : energy_quanta - static_cast<double>(count());
  }

  void validate() const {
    detail::require(std::isfinite(n_components) && n_components >= 1.0,
                    "FluctuationSpec: N must be >= 1");
    detail::require(std::isfinite(volume) && volume > 0.0, "FluctuationSpec: V must be > 0");
    detail::require(std::isfinite(reference_volume) && reference_volume > 0.0,
                    "FluctuationSpec: V0 must be > 0");
    detail::require(allow_expansion || volume <= reference_volume,
                    "FluctuationSpec: V > V0 requires allow_expansion");
  }
};

/// S - S0 = k N ln(V / V0).
inline double gas_entropy_change(const FluctuationSpec& spec, const UnitSystem& units = {}) {
  spec.validate();
  units.validate();
  return units.k * spec.n_components * std::log(spec.volume_ratio());
}

/// S - S0 = k (E / h nu) ln(V / V0) for radiation of energy E >= 0 at frequency nu.
inline double radiation_entropy_change(double energy, double nu, double volume, double reference_volume,
                                       const UnitSystem& units = {}) {
  units.validate();
  detail::require(std::isfinite(energy) && energy >= 0.0, "radiation_entropy_change: E must be >= 0");
  detail::require(std::isfinite(nu) && nu > 0.0, "radiation_entropy_change: nu must be > 0");
  detail::require(std::isfinite(volume) && volume > 0.0 && std::isfinite(reference_volume) &&
                      reference_volume > 0.0,
                  "radiation_entropy_change: volumes must be > 0");
  if (energy == 0.0) return 0.0;
  return units.k * (energy / (units.h * nu)) * std::log(volume / reference_volume);
}

/// W = (V / V0)^N, the probability that all N independent components are
/// found in V at once; equals exp((S - S0) / k).
inline double fluctuation_probability(const FluctuationSpec& spec) {
  spec.validate();
  detail::require(spec.volume <= spec.reference_volume,
                  "fluctuation_probability: requires V <= V0");
  return std::pow(spec.volume_ratio(), spec.n_components);
}

struct MonteCarloEstimate {
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double probability = 0.0;     // hits / trials
  double expected = 0.0;        // (V / V0)^N
  double standard_error = 0.0;  // binomial, from the expected value

  bool within(double n_sigma) const {
    return std::abs(probability - expected) <= n_sigma * standard_error;
  }
};

/// Places count() independent uniform points in V0 per trial and counts the
/// trials in which every point lands in V. Trial s uses substream(seed, s).
inline MonteCarloEstimate monte_carlo_fluctuation(const FluctuationSpec& spec, std::int64_t n_trials,
                                                  std::uint64_t rng_seed) {
  spec.validate();
  const int n = spec.count();
  detail::require(n >= 1 && n <= kMaxMonteCarloComponents,
                  "monte_carlo_fluctuation: N must be in [1, 20]");
  detail::require(n_trials >= kMinMonteCarloTrials, "monte_carlo_fluctuation: need >= 1e4 trials");
  detail::require(spec.volume <= spec.reference_volume, "monte_carlo_fluctuation: requires V <= V0");
  const double ratio = spec.volume_ratio();
  MonteCarloEstimate est;
  est.trials = n_trials;
  for (std::int64_t s = 0; s < n_trials; ++s) {
    auto eng = substream(rng_seed, static_cast<std::uint64_t>(s));
    bool inside = true;
    for (int i = 0; i < n && inside; ++i) inside = uniform01(eng) < ratio;
    est.hits += inside ? 1 : 0;
  }
  est.probability = static_cast<double>(est.hits) / static_cast<double>(n_trials);
  est.expected = std::pow(ratio, n);
  est.standard_error = std::sqrt(est.expected * (1.0 - est.expected) / static_cast<double>(n_trials));
  return est;
}

/// Demon illuminating a gas with one photon of frequency nu1 at temperature
/// T, gaining information that reduces the microstate count P0 by p.
struct BrillouinSpec {
  double temperature = 1.0;
  double nu1 = 10.0;
  double microstates = 1e6;  // P0
  double information = 1.0;  // p, with 0 <= p < P0

  void validate() const {
    detail::require(std::isfinite(temperature) && temperature > 0.0, "BrillouinSpec: T must be > 0");
    detail::require(std::isfinite(nu1) && nu1 > 0.0, "BrillouinSpec: nu1 must be > 0");
    detail::require(std::isfinite(microstates) && microstates > 0.0, "BrillouinSpec: P0 must be > 0");
    detail::require(std::isfinite(information) && information >= 0.0 && information < microstates,
                    "BrillouinSpec: need 0 <= p < P0");
  }
};

struct BrillouinReport {
  double demon_entropy = 0.0;     // h nu1 / T
  double gas_entropy_approx = 0.0;  // -k p / P0
  double gas_entropy_exact = 0.0;   // k ln((P0 - p) / P0)
  double net = 0.0;               // demon + approx
  double net_exact = 0.0;         // demon + exact
  bool probe_regime = false;      // h nu1 > k T
};

inline BrillouinReport brillouin_balance(const BrillouinSpec& spec, const UnitSystem& units = {}) {
  spec.validate();
  units.validate();
  BrillouinReport r;
  const double x = spec.information / spec.microstates;
  r.demon_entropy = units.h * spec.nu1 / spec.temperature;
  r.gas_entropy_approx = -units.k * x;
  r.gas_entropy_exact = units.k * std::log1p(-x);
  r.net = r.demon_entropy + r.gas_entropy_approx;
  r.net_exact = r.demon_entropy + r.gas_entropy_exact;
  r.probe_regime = units.h * spec.nu1 > units.k * spec.temperature;
  return r;
}

}  // namespace demonlab::einstein
