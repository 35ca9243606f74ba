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

// Continuous-time master-equation engine.
//
// Probabilities p_i over n microstates evolve under symmetric transition
// rates r_ij according to dp/dt = L p, where the generator L has
// L_ij = r_ij off the diagonal and L_jj = -sum_{i != j} r_ij, so every
// column sums to zero. The Shannon entropy S = -k sum p ln p never
// decreases along such trajectories.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "demonlab/errors.hpp"
#include "demonlab/units.hpp"

namespace demonlab::markov {

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr double kNegativityFloor = -1e-12;
inline constexpr double kMonotoneSlack = -1e-12;
inline constexpr double kInteriorFloor = 1e-15;
// Above this state count evolve() switches from the dense matrix
// exponential to adaptive Runge-Kutta stepping.
inline constexpr Eigen::Index kDenseExponentialLimit = 64;

/// Symmetric, nonnegative transition rates r_ij (1/time). The diagonal of
/// the input is ignored and stored as zero.
class RateMatrix {
 public:
  explicit RateMatrix(Eigen::MatrixXd rates) : rates_(std::move(rates)) {
    const Eigen::Index n = rates_.rows();
    detail::require(n >= 2 && rates_.cols() == n, "RateMatrix: need a square matrix with n >= 2");
    for (Eigen::Index i = 0; i < n; ++i) {
      rates_(i, i) = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double r = rates_(i, j);
        detail::require(std::isfinite(r), "RateMatrix: non-finite rate");
        detail::require(r >= 0.0, "RateMatrix: negative rate r[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "]");
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double a = rates_(i, j), b = rates_(j, i);
        detail::require(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)),
                        "RateMatrix: asymmetric rates r[" + std::to_string(i) + "][" +
                            std::to_string(j) + "] != r[" + std::to_string(j) + "][" +
                            std::to_string(i) + "]");
      }
  }

  static RateMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      detail::require(static_cast<Eigen::Index>(rows[i].size()) == n,
                      "RateMatrix: row " + std::to_string(i) + " has wrong length");
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return RateMatrix(std::move(m));
  }

  // Every pair of states coupled with the same rate.
  static RateMatrix complete(Eigen::Index n, double rate) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, rate);
    return RateMatrix(std::move(m));
  }

  // Nearest-neighbour ring (a single edge when n == 2).
  static RateMatrix ring(Eigen::Index n, double rate) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index j = (i + 1) % n;
      m(i, j) = m(j, i) = rate;
    }
    return RateMatrix(std::move(m));
  }

  Eigen::Index size() const { return rates_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return rates_(i, j); }
  const Eigen::MatrixXd& matrix() const { return rates_; }

  // True iff the graph of nonzero rates is a single communicating class.
  bool connected() const {
    const Eigen::Index n = size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<Eigen::Index> frontier;
    frontier.push(0);
    seen[0] = 1;
    Eigen::Index visited = 1;
    while (!frontier.empty()) {
      const Eigen::Index i = frontier.front();
      frontier.pop();
      for (Eigen::Index j = 0; j < n; ++j)
        if (!seen[j] && rates_(i, j) > 0.0) {
          seen[j] = 1;
          ++visited;
          frontier.push(j);
        }
    }
    return visited == n;
  }

 private:
  Eigen::MatrixXd rates_;
};

/// Generator of the master equation. Columns sum to zero.
class MasterOperator {
 public:
  explicit MasterOperator(const RateMatrix& rates) : gen_(rates.matrix()) {
    for (Eigen::Index j = 0; j < gen_.cols(); ++j) {
      double out = 0.0;
      for (Eigen::Index i = 0; i < gen_.rows(); ++i)
        if (i != j) out += gen_(i, j);
      gen_(j, j) = -out;
    }
  }

  Eigen::Index size() const { return gen_.rows(); }
  const Eigen::MatrixXd& matrix() const { return gen_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return gen_(i, j); }

  Eigen::VectorXd apply(const Eigen::VectorXd& p) const { return gen_ * p; }

 private:
  Eigen::MatrixXd gen_;
};

inline MasterOperator build_master_operator(const RateMatrix& rates) { return MasterOperator(rates); }

/// Probability vector on microstates: entries >= 0, sum within 1e-12 of 1.
class ProbDist {
 public:
  explicit ProbDist(Eigen::VectorXd p) : p_(std::move(p)) {
    detail::require(p_.size() >= 1, "ProbDist: empty vector");
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
      detail::require(std::isfinite(p_[i]), "ProbDist: non-finite entry");
      detail::require(p_[i] >= 0.0, "ProbDist: negative entry at " + std::to_string(i));
    }
    detail::require(std::abs(p_.sum() - 1.0) <= kProbabilityTolerance,
                    "ProbDist: entries must sum to 1");
  }

  ProbDist(std::initializer_list<double> values)
      : ProbDist(Eigen::Map<const Eigen::VectorXd>(values.begin(),
                                                   static_cast<Eigen::Index>(values.size()))) {}

  static ProbDist uniform(Eigen::Index n) {
    return ProbDist(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
  }

  Eigen::Index size() const { return p_.size(); }
  double operator[](Eigen::Index i) const { return p_[i]; }
  const Eigen::VectorXd& vector() const { return p_; }

  bool interior(double floor = kInteriorFloor) const { return p_.minCoeff() > floor; }

  double max_abs_diff(const ProbDist& other) const {
    return (p_ - other.p_).cwiseAbs().maxCoeff();
  }

 private:
  Eigen::VectorXd p_;
};

enum class Integrator { automatic, matrix_exponential, adaptive_ode };

namespace detail {

using demonlab::detail::require;

// Dormand-Prince 5(4) with error control on the increment dp.
inline Eigen::VectorXd integrate_dopri(const Eigen::MatrixXd& gen, Eigen::VectorXd p, double t) {
  constexpr double rtol = 1e-13, atol = 1e-15;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t == 0.0) return p;
  const double norm = gen.cwiseAbs().colwise().sum().maxCoeff();
  if (norm == 0.0) return p;
  double h = std::min(t, 0.1 / norm);
  double elapsed = 0.0;
  Eigen::VectorXd k1 = gen * p;
  std::size_t steps = 0;
  while (elapsed < t) {
    require(++steps < 50'000'000, "evolve: adaptive integrator exceeded step budget");
    if (elapsed + h > t) h = t - elapsed;
    const Eigen::VectorXd k2 = gen * (p + h * a21 * k1);
    const Eigen::VectorXd k3 = gen * (p + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = gen * (p + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = gen * (p + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        gen * (p + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd dp = h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd next = p + dp;
    const Eigen::VectorXd k7 = gen * next;
    const Eigen::VectorXd err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double ratio = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const double scale = atol + rtol * std::max(std::abs(p[i]), std::abs(next[i]));
      ratio = std::max(ratio, std::abs(err[i]) / scale);
    }
    if (ratio <= 1.0) {
      elapsed += h;
      p = next;
      k1 = k7;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return p;
}

}  // namespace detail

/// Solution of dp/dt = L p at time t: exp(L t) p0.
inline ProbDist evolve(const ProbDist& p0, const MasterOperator& op, double t,
                       Integrator method = Integrator::automatic) {
  detail::require(p0.size() == op.size(), "evolve: dimension mismatch");
  detail::require(!std::isnan(t) && t >= 0.0, "evolve: time must be nonnegative");
  if (!std::isfinite(t)) throw numeric_error("evolve: non-finite time");
  if (!op.matrix().allFinite()) throw numeric_error("evolve: non-finite operator entries");
  if (t == 0.0) return p0;

  if (method == Integrator::automatic)
    method = op.size() <= kDenseExponentialLimit ? Integrator::matrix_exponential
                                                 : Integrator::adaptive_ode;
  Eigen::VectorXd p;
  if (method == Integrator::matrix_exponential) {
    const Eigen::MatrixXd propagator = (op.matrix() * t).exp();
    p = propagator * p0.vector();
  } else {
    p = detail::integrate_dopri(op.matrix(), p0.vector(), t);
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) throw numeric_error("evolve: non-finite probability");
    if (p[i] < kNegativityFloor) throw numeric_error("evolve: probability went negative");
    if (p[i] < 0.0) p[i] = 0.0;
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > kProbabilityTolerance)
    throw numeric_error("evolve: probability not conserved");
  return ProbDist(std::move(p));
}

/// -k sum p_i ln p_i with 0 ln 0 = 0.
inline double shannon_entropy(const ProbDist& p, const UnitSystem& units = {}) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s -= p[i] * std::log(p[i]);
  return units.k * s;
}

/// (k/2) sum_{ij} r_ij (ln p_j - ln p_i)(p_j - p_i), in units of k per time.
///
/// Every term is a product of two differences with the same sign, so the
/// result is nonnegative. Throws divergence_error when a state with a
/// nonzero incident rate has probability exactly zero; callers working at
/// the simplex boundary should clamp to kInteriorFloor first.
inline double entropy_production_rate(const ProbDist& p, const RateMatrix& rates,
                                      const UnitSystem& units = {}) {
  detail::require(p.size() == rates.size(), "entropy_production_rate: dimension mismatch");
  const Eigen::Index n = p.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p[i] > 0.0) continue;
    for (Eigen::Index j = 0; j < n; ++j)
      if (rates(i, j) > 0.0)
        throw divergence_error("entropy_production_rate: p[" + std::to_string(i) +
                               "] = 0 on a state with nonzero rates");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = rates(i, j);
      if (r == 0.0) continue;
      // i<j and j<i terms are equal for symmetric rates.
      sum += r * (std::log(p[j]) - std::log(p[i])) * (p[j] - p[i]);
    }
  return units.k * sum;
}

/// Stationary distribution of a connected rate graph.
inline ProbDist equilibrium_distribution(const RateMatrix& rates) {
  if (!rates.connected())
    throw non_unique_equilibrium("equilibrium_distribution: transition graph is disconnected");
  const MasterOperator op(rates);
  const Eigen::Index n = op.size();
  // Replace the last balance equation (redundant, columns sum to zero)
  // with the normalization constraint.
  Eigen::MatrixXd a = op.matrix();
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[n - 1] = 1.0;
  Eigen::VectorXd p = a.colPivHouseholderQr().solve(b);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(p[i])) throw numeric_error("equilibrium_distribution: singular system");
    p[i] = std::max(p[i], 0.0);
  }
  p /= p.sum();
  return ProbDist(std::move(p));
}

/// Entrywise check of r_ij p_j == r_ji p_i.
inline bool satisfies_detailed_balance(const RateMatrix& rates, const ProbDist& p,
                                       double tol = 1e-12) {
  for (Eigen::Index i = 0; i < rates.size(); ++i)
    for (Eigen::Index j = 0; j < rates.size(); ++j)
      if (std::abs(rates(i, j) * p[j] - rates(j, i) * p[i]) > tol) return false;
  return true;
}

struct HTheoremReport {
  std::vector<double> times;
  std::vector<double> entropy;          // S(t), units of k
  std::vector<double> production_rate;  // dS/dt, units of k / time
  std::vector<double> dist_to_eq;       // max_i |p_i(t) - p_i^eq|
  ProbDist equilibrium = ProbDist({1.0});
  bool monotone = true;
  double terminal_distance = 0.0;
  double min_production_rate = 0.0;
};

/// Samples S(t) and dS/dt along the trajectory from p0 on a nondecreasing
/// time grid and checks that S never decreases by more than 1e-12.
inline HTheoremReport verify_h_theorem(const RateMatrix& rates, const ProbDist& p0,
                                       const std::vector<double>& t_grid,
                                       const UnitSystem& units = {}) {
  detail::require(p0.size() == rates.size(), "verify_h_theorem: dimension mismatch");
  detail::require(p0.interior(), "verify_h_theorem: p0 must have every entry > 1e-15");
  detail::require(!t_grid.empty(), "verify_h_theorem: empty time grid");
  detail::require(std::is_sorted(t_grid.begin(), t_grid.end()),
                  "verify_h_theorem: time grid must be nondecreasing");
  detail::require(t_grid.front() >= 0.0, "verify_h_theorem: negative time");

  const MasterOperator op(rates);
  HTheoremReport rep;
  rep.equilibrium = equilibrium_distribution(rates);
  rep.times = t_grid;
  rep.min_production_rate = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const ProbDist p = evolve(p0, op, t);
    rep.entropy.push_back(shannon_entropy(p, units));
    const double rate = entropy_production_rate(p, rates, units);
    rep.production_rate.push_back(rate);
    rep.min_production_rate = std::min(rep.min_production_rate, rate);
    rep.dist_to_eq.push_back(p.max_abs_diff(rep.equilibrium));
  }
  const double slack = kMonotoneSlack * units.k;
  for (std::size_t i = 1; i < rep.entropy.size(); ++i)
    if (rep.entropy[i] - rep.entropy[i - 1] < slack) rep.monotone = false;
  rep.terminal_distance = rep.dist_to_eq.back();
  return rep;
}

}  // namespace demonlab::markov
