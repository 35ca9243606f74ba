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

// Golden-rule decay rates and the stochastic decay they describe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <vector>

#include "demonlab/csv.hpp"
#include "demonlab/errors.hpp"
#include "demonlab/markov.hpp"
#include "demonlab/random.hpp"
#include "demonlab/units.hpp"

namespace demonlab::fgr {

/// A single final-state channel. The energy-conserving delta function is
/// replaced by the density of final states at resonance.
struct DecayChannel {
  double matrix_element_sq = 0.0;  // |<i|H_I|f>|^2, energy^2
  double density_of_states = 0.0;  // rho(E_f), 1/energy

  void validate() const {
    detail::require(std::isfinite(matrix_element_sq) && matrix_element_sq >= 0.0,
                    "DecayChannel: |M|^2 must be >= 0");
    detail::require(std::isfinite(density_of_states) && density_of_states >= 0.0,
                    "DecayChannel: density of states must be >= 0");
  }
};

/// Gamma = (2 pi / hbar) |M|^2 rho.
inline double golden_rule_rate(const DecayChannel& channel, const UnitSystem& units = {}) {
  channel.validate();
  units.validate();
  return 2.0 * std::numbers::pi / units.hbar() * channel.matrix_element_sq *
         channel.density_of_states;
}

/// Excited level with total decay rate gamma and energy width.
///
/// The width is stored under the convention width = hbar * gamma
/// (= h gamma / 2 pi); the "tau ~ h / dE" lifetime relation fixes the
/// product only up to this 2 pi choice.
struct ExcitedLevel {
  double gamma = 1.0;  // 1/time
  double width = 0.0;  // energy

  static ExcitedLevel from_rate(double gamma, const UnitSystem& units = {}) {
    detail::require(std::isfinite(gamma) && gamma > 0.0, "ExcitedLevel: gamma must be > 0");
    return {gamma, units.hbar() * gamma};
  }

  bool width_consistent(const UnitSystem& units = {}) const {
    const double expected = units.hbar() * gamma;
    return std::abs(width - expected) <= 1e-12 * std::abs(expected);
  }
};

inline double lifetime(double gamma) {
  detail::require(std::isfinite(gamma) && gamma > 0.0, "lifetime: gamma must be > 0");
  return 1.0 / gamma;
}

inline double lifetime(const ExcitedLevel& level) { return lifetime(level.gamma); }

/// Symmetric rate matrix whose off-diagonal entries are golden-rule rates of
/// the corresponding channels. `channels[i][j]` for i < j is used; the lower
/// triangle and diagonal are ignored.
inline markov::RateMatrix rate_matrix_from_channels(
    const std::vector<std::vector<DecayChannel>>& channels, const UnitSystem& units = {}) {
  const auto n = static_cast<Eigen::Index>(channels.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    detail::require(static_cast<Eigen::Index>(channels[i].size()) == n,
                    "rate_matrix_from_channels: ragged channel table");
    for (Eigen::Index j = i + 1; j < n; ++j)
      m(i, j) = m(j, i) = golden_rule_rate(channels[i][j], units);
  }
  return markov::RateMatrix(std::move(m));
}

/// Sorted exponential waiting times from one seeded run.
class SurvivalCurve {
 public:
  SurvivalCurve(double gamma, std::vector<double> sorted_times)
      : gamma_(gamma), times_(std::move(sorted_times)) {}

  double gamma() const { return gamma_; }
  std::size_t samples() const { return times_.size(); }
  const std::vector<double>& waiting_times() const { return times_; }

  // Fraction of waiting times >= t; exactly 1 at t = 0.
  double empirical(double t) const {
    const auto it = std::lower_bound(times_.begin(), times_.end(), t);
    return static_cast<double>(times_.end() - it) / static_cast<double>(times_.size());
  }

  double analytic(double t) const { return std::exp(-gamma_ * t); }

  // Binomial standard error of the empirical survival at t.
  double standard_error(double t) const {
    const double s = analytic(t);
    return std::sqrt(s * (1.0 - s) / static_cast<double>(times_.size()));
  }

  double mean_waiting_time() const {
    double sum = 0.0;
    for (double x : times_) sum += x;
    return sum / static_cast<double>(times_.size());
  }

  // Standard error of the mean of an exponential sample: (1/gamma)/sqrt(n).
  double mean_standard_error() const {
    return 1.0 / (gamma_ * std::sqrt(static_cast<double>(times_.size())));
  }

 private:
  double gamma_;
  std::vector<double> times_;
};

/// Draws n_samples waiting times by inverse CDF, t = -ln(U) / gamma with
/// U in (0, 1]; sample s uses substream(seed, s).
inline SurvivalCurve simulate_decay(double gamma, std::int64_t n_samples, std::uint64_t rng_seed) {
  detail::require(std::isfinite(gamma) && gamma > 0.0, "simulate_decay: gamma must be > 0");
  detail::require(n_samples >= 1, "simulate_decay: need at least one sample");
  std::vector<double> times(static_cast<std::size_t>(n_samples));
  for (std::int64_t s = 0; s < n_samples; ++s) {
    auto eng = substream(rng_seed, static_cast<std::uint64_t>(s));
    times[static_cast<std::size_t>(s)] = -std::log(uniform01_open_low(eng)) / gamma;
  }
  std::sort(times.begin(), times.end());
  return SurvivalCurve(gamma, std::move(times));
}

// CSV: t, empirical_survival, analytic_survival on the given grid.
inline void write_csv(std::ostream& os, const SurvivalCurve& curve, const std::vector<double>& t_grid) {
  csv::Writer w(os);
  w.header({"t", "empirical_survival", "analytic_survival"});
  for (double t : t_grid) w.row({t, curve.empirical(t), curve.analytic(t)});
}

}  // namespace demonlab::fgr
