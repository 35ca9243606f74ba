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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include "demonlab/csv.hpp"
#include "demonlab/errors.hpp"
#include "demonlab/random.hpp"

namespace demonlab::brownian {

enum class StepLaw { plus_minus_one, gaussian };

struct WalkSpec {
  std::int64_t n_steps = 100;
  StepLaw law = StepLaw::plus_minus_one;
  double sigma_step = 1.0;  // used by StepLaw::gaussian; +-1 steps have unit size
  std::int64_t n_walkers = 10'000;
  std::uint64_t seed = 0;
  double dt = 1.0;  // time per step, a labelling constant

  double step_variance() const { return law == StepLaw::gaussian ? sigma_step * sigma_step : 1.0; }

  void validate() const {
    detail::require(n_steps >= 1, "WalkSpec: n_steps must be >= 1");
    detail::require(n_walkers >= 1, "WalkSpec: n_walkers must be >= 1");
    detail::require(std::isfinite(dt) && dt > 0.0, "WalkSpec: dt must be > 0");
    if (law == StepLaw::gaussian)
      detail::require(std::isfinite(sigma_step) && sigma_step > 0.0, "WalkSpec: sigma_step must be > 0");
  }
};

struct DiffusionReport {
  std::vector<double> times;              // step * dt, steps 1..n
  std::vector<double> mean_displacement;  // <x>
  std::vector<double> msd;                // <x^2>
  std::vector<double> mean_stderr;        // stderr of <x>
  std::vector<double> msd_stderr;         // stderr of <x^2>
  double fitted_D = 0.0;      // slope / 2 of msd vs t
  double fit_intercept = 0.0;
  double analytic_D = 0.0;    // sigma_step^2 / (2 dt)
  double r_squared = 1.0;
  std::int64_t fit_first_step = 1;
};

namespace detail {

using demonlab::detail::require;

struct Moments {
  std::vector<double> sum_x, sum_x2, sum_x4;
  std::vector<double> recorded;  // positions at the recorded step
};

// Walker w uses substream(seed, w).
inline Moments run_walkers(const WalkSpec& spec, std::int64_t record_step) {
  const auto n = static_cast<std::size_t>(spec.n_steps);
  Moments m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), {}};
  if (record_step > 0) m.recorded.reserve(static_cast<std::size_t>(spec.n_walkers));
  for (std::int64_t w = 0; w < spec.n_walkers; ++w) {
    auto eng = substream(spec.seed, static_cast<std::uint64_t>(w));
    std::normal_distribution<double> gauss(0.0, spec.sigma_step);
    double x = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (spec.law == StepLaw::plus_minus_one) {
        x += (eng() >> 63) ? 1.0 : -1.0;
      } else {
        x += gauss(eng);
      }
      const double x2 = x * x;
      m.sum_x[s] += x;
      m.sum_x2[s] += x2;
      m.sum_x4[s] += x2 * x2;
      if (static_cast<std::int64_t>(s) + 1 == record_step) m.recorded.push_back(x);
    }
  }
  return m;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace detail

/// Ensemble moments of independent symmetric walks and the diffusion
/// coefficient from a least-squares line msd = 2 D t + c over steps
/// [10, n] (all steps when n < 20).
inline DiffusionReport simulate_walks(const WalkSpec& spec) {
  spec.validate();
  const auto m = detail::run_walkers(spec, 0);
  const auto n = static_cast<std::size_t>(spec.n_steps);
  const auto walkers = static_cast<double>(spec.n_walkers);
  DiffusionReport r;
  for (std::size_t s = 0; s < n; ++s) {
    const double mean = m.sum_x[s] / walkers;
    const double msd = m.sum_x2[s] / walkers;
    const double var_x = std::max(msd - mean * mean, 0.0);
    const double var_x2 = std::max(m.sum_x4[s] / walkers - msd * msd, 0.0);
    r.times.push_back(static_cast<double>(s + 1) * spec.dt);
    r.mean_displacement.push_back(mean);
    r.msd.push_back(msd);
    r.mean_stderr.push_back(std::sqrt(var_x / walkers));
    r.msd_stderr.push_back(std::sqrt(var_x2 / walkers));
  }
  r.analytic_D = spec.step_variance() / (2.0 * spec.dt);

  r.fit_first_step = spec.n_steps >= 20 ? 10 : 1;
  const std::size_t first = static_cast<std::size_t>(r.fit_first_step - 1);
  const double count = static_cast<double>(n - first);
  if (n - first < 2) {
    r.fitted_D = r.msd[first] / (2.0 * r.times[first]);
    r.fit_intercept = 0.0;
    r.r_squared = 1.0;
    return r;
  }
  double st = 0.0, sy = 0.0;
  for (std::size_t s = first; s < n; ++s) {
    st += r.times[s];
    sy += r.msd[s];
  }
  const double tbar = st / count, ybar = sy / count;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t s = first; s < n; ++s) {
    const double dt = r.times[s] - tbar, dy = r.msd[s] - ybar;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  r.fitted_D = 0.5 * slope;
  r.fit_intercept = ybar - slope * tbar;
  double ss_res = 0.0;
  for (std::size_t s = first; s < n; ++s) {
    const double e = r.msd[s] - (slope * r.times[s] + r.fit_intercept);
    ss_res += e * e;
  }
  r.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return r;
}

struct GoodnessReport {
  std::int64_t step = 0;
  std::vector<double> bin_low, bin_high;
  std::vector<double> observed, expected;
  double chi_squared = 0.0;
  double chi_squared_per_bin = 0.0;
  double variance_empirical = 0.0;
  double variance_expected = 0.0;  // step * sigma_step^2
  bool pass = false;               // chi_squared_per_bin <= 2
};

inline constexpr std::int64_t kMinHistogramStep = 25;
inline constexpr std::int64_t kMinHistogramWalkers = 1000;
inline constexpr std::size_t kMinHistogramBins = 20;
inline constexpr double kChiSquaredPerBinLimit = 2.0;

/// Compares the position histogram at `step` with the Gaussian of variance
/// step * sigma_step^2 over +-4 sigma. For +-1 walks only sites of the right
/// parity are reachable; each site stands for the interval [x - 1, x + 1]
/// and bins are whole groups of sites.
inline GoodnessReport histogram_vs_gaussian(const WalkSpec& spec, std::int64_t step,
                                            std::size_t n_bins = kMinHistogramBins) {
  spec.validate();
  detail::require(step >= kMinHistogramStep, "histogram_vs_gaussian: step must be >= 25");
  detail::require(step <= spec.n_steps, "histogram_vs_gaussian: step beyond the walk length");
  detail::require(spec.n_walkers >= kMinHistogramWalkers,
                  "histogram_vs_gaussian: need at least 1000 walkers");
  detail::require(n_bins >= kMinHistogramBins, "histogram_vs_gaussian: need at least 20 bins");

  const auto m = detail::run_walkers(spec, step);
  GoodnessReport g;
  g.step = step;
  g.variance_expected = static_cast<double>(step) * spec.step_variance();
  const double sigma = std::sqrt(g.variance_expected);
  const double range = 4.0 * sigma;

  if (spec.law == StepLaw::plus_minus_one) {
    const std::int64_t smax = static_cast<std::int64_t>(std::floor(range));
    std::vector<std::int64_t> sites;
    for (std::int64_t x = -step; x <= step; x += 2)
      if (x >= -smax && x <= smax) sites.push_back(x);
    const std::size_t per_bin = sites.size() / n_bins;
    detail::require(per_bin >= 1, "histogram_vs_gaussian: too few lattice sites for the bin count");
    const std::size_t skip = (sites.size() - per_bin * n_bins) / 2;
    for (std::size_t b = 0; b < n_bins; ++b) {
      g.bin_low.push_back(static_cast<double>(sites[skip + b * per_bin]) - 1.0);
      g.bin_high.push_back(static_cast<double>(sites[skip + (b + 1) * per_bin - 1]) + 1.0);
    }
  } else {
    const double width = 2.0 * range / static_cast<double>(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
      g.bin_low.push_back(-range + static_cast<double>(b) * width);
      g.bin_high.push_back(-range + static_cast<double>(b + 1) * width);
    }
  }

  g.observed.assign(n_bins, 0.0);
  double sum2 = 0.0;
  for (double x : m.recorded) {
    sum2 += x * x;
    for (std::size_t b = 0; b < n_bins; ++b)
      if (x >= g.bin_low[b] && x < g.bin_high[b]) {
        g.observed[b] += 1.0;
        break;
      }
  }
  const auto walkers = static_cast<double>(spec.n_walkers);
  g.variance_empirical = sum2 / walkers;
  for (std::size_t b = 0; b < n_bins; ++b) {
    const double e = walkers * (detail::normal_cdf(g.bin_high[b] / sigma) - detail::normal_cdf(g.bin_low[b] / sigma));
    g.expected.push_back(e);
    const double d = g.observed[b] - e;
    g.chi_squared += d * d / e;
  }
  g.chi_squared_per_bin = g.chi_squared / static_cast<double>(n_bins);
  g.pass = g.chi_squared_per_bin <= kChiSquaredPerBinLimit;
  return g;
}

// CSV: t, mean_displacement, msd, msd_stderr.
inline void write_csv(std::ostream& os, const DiffusionReport& r) {
  csv::Writer w(os);
  w.header({"t", "mean_displacement", "msd", "msd_stderr"});
  for (std::size_t i = 0; i < r.times.size(); ++i)
    w.row({r.times[i], r.mean_displacement[i], r.msd[i], r.msd_stderr[i]});
}

}  // namespace demonlab::brownian
