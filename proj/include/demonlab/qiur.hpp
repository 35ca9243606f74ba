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

// Entropic uncertainty on sampled wavefunctions.
//
// A position wavefunction psi(x) and its momentum transform phi(p) carry
// differential entropies I(x) = -int |psi|^2 ln |psi|^2 dx and
// I(p) = -int |phi|^2 ln |phi|^2 dp whose sum is bounded below by
// ln(h e / 2), with equality exactly for minimum-uncertainty Gaussians.
// Entropies of dimensional densities are in nats relative to the unit
// length / momentum of the active UnitSystem; only the joint sum is
// independent of that choice.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "demonlab/errors.hpp"
#include "demonlab/fft.hpp"
#include "demonlab/units.hpp"

namespace demonlab::qiur {

using complex = std::complex<double>;

inline constexpr double kNormalizationTolerance = 1e-10;
inline constexpr double kDensityTolerance = 1e-8;
inline constexpr std::size_t kMinEntropySamples = 64;
inline constexpr std::size_t kDefaultSamples = 4096;
inline constexpr double kDefaultHalfSpanSigmas = 8.0;
inline constexpr double kDiscretizationSlack = 1e-3;

struct PositionAxis {
  static constexpr const char* name = "position";
};
struct MomentumAxis {
  static constexpr const char* name = "momentum";
};

/// Complex amplitudes sampled on the uniform grid origin + j * spacing,
/// normalized so that sum |a_j|^2 * spacing == 1 within 1e-10.
template <class Axis>
class SampledAmplitudes {
 public:
  SampledAmplitudes(double origin, double spacing, std::vector<complex> amps)
      : origin_(origin), spacing_(spacing), amps_(std::move(amps)) {
    detail::require(std::isfinite(origin_), std::string(Axis::name) + " grid: non-finite origin");
    detail::require(std::isfinite(spacing_) && spacing_ > 0.0,
                    std::string(Axis::name) + " grid: spacing must be > 0");
    detail::require(amps_.size() >= 2, std::string(Axis::name) + " grid: need at least 2 samples");
    const double n = norm();
    detail::require(std::isfinite(n), std::string(Axis::name) + " grid: non-finite amplitudes");
    detail::require(std::abs(n - 1.0) <= kNormalizationTolerance,
                    std::string(Axis::name) + " grid: amplitudes are not normalized");
  }

  // Rescales arbitrary nonzero amplitudes to unit norm.
  static SampledAmplitudes normalized(double origin, double spacing, std::vector<complex> amps) {
    double sum = 0.0;
    for (const auto& a : amps) sum += std::norm(a);
    sum *= spacing;
    detail::require(std::isfinite(sum) && sum > 0.0,
                    std::string(Axis::name) + " grid: cannot normalize a zero wavefunction");
    const double scale = 1.0 / std::sqrt(sum);
    for (auto& a : amps) a *= scale;
    return SampledAmplitudes(origin, spacing, std::move(amps));
  }

  // Samples f on origin + j * spacing, j < n, then normalizes.
  template <class F>
  static SampledAmplitudes sample(double origin, double spacing, std::size_t n, F&& f) {
    std::vector<complex> amps(n);
    for (std::size_t j = 0; j < n; ++j)
      amps[j] = complex(f(origin + static_cast<double>(j) * spacing));
    return normalized(origin, spacing, std::move(amps));
  }

  double origin() const { return origin_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return amps_.size(); }
  double coordinate(std::size_t j) const { return origin_ + static_cast<double>(j) * spacing_; }
  const std::vector<complex>& amplitudes() const { return amps_; }

  double norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return sum * spacing_;
  }

  std::vector<double> density() const {
    std::vector<double> rho(amps_.size());
    for (std::size_t j = 0; j < amps_.size(); ++j) rho[j] = std::norm(amps_[j]);
    return rho;
  }

  double mean() const {
    double m = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j) m += coordinate(j) * std::norm(amps_[j]);
    return m * spacing_;
  }

  double standard_deviation() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      const double d = coordinate(j) - m;
      v += d * d * std::norm(amps_[j]);
    }
    return std::sqrt(v * spacing_);
  }

 private:
  double origin_;
  double spacing_;
  std::vector<complex> amps_;
};

using WavefunctionGrid = SampledAmplitudes<PositionAxis>;
using MomentumGrid = SampledAmplitudes<MomentumAxis>;

/// phi(p) = h^{-1/2} int psi(x) exp(-i p x / hbar) dx on the conjugate grid
/// dp = h / (N dx), centred on p = 0.
inline MomentumGrid to_momentum(const WavefunctionGrid& psi, const UnitSystem& units = {}) {
  units.validate();
  const std::size_t n = psi.size();
  const double hbar = units.hbar();
  const double dx = psi.spacing();
  const double x0 = psi.origin();
  const double dp = units.h / (static_cast<double>(n) * dx);
  const auto shift = static_cast<double>(n / 2);
  const double p0 = -shift * dp;

  std::vector<complex> a(psi.amplitudes());
  // exp(-i p0 j dx / hbar) = exp(2 pi i shift j / N)
  for (std::size_t j = 0; j < n; ++j) {
    const double ang = 2.0 * std::numbers::pi * shift * static_cast<double>(j) / static_cast<double>(n);
    a[j] *= complex(std::cos(ang), std::sin(ang));
  }
  fft::forward(a);
  const double scale = dx / std::sqrt(units.h);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = -(p0 + static_cast<double>(k) * dp) * x0 / hbar;
    a[k] *= scale * complex(std::cos(ang), std::sin(ang));
  }
  return MomentumGrid(p0, dp, std::move(a));
}

/// Inverse of to_momentum onto the position grid starting at x0.
inline WavefunctionGrid to_position(const MomentumGrid& phi, double x0, const UnitSystem& units = {}) {
  units.validate();
  const std::size_t n = phi.size();
  const double hbar = units.hbar();
  const double dp = phi.spacing();
  const double p0 = phi.origin();
  const double dx = units.h / (static_cast<double>(n) * dp);

  std::vector<complex> a(phi.amplitudes());
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = static_cast<double>(k) * dp * x0 / hbar;
    a[k] *= complex(std::cos(ang), std::sin(ang));
  }
  fft::backward(a);
  const double scale = dp / std::sqrt(units.h);
  for (std::size_t j = 0; j < n; ++j) {
    const double ang = p0 * (x0 + static_cast<double>(j) * dx) / hbar;
    a[j] *= scale * complex(std::cos(ang), std::sin(ang));
  }
  return WavefunctionGrid(x0, dx, std::move(a));
}

/// Riemann-sum differential entropy -sum rho ln rho * spacing (0 ln 0 = 0).
inline double differential_entropy(std::span<const double> density, double spacing) {
  detail::require(density.size() >= kMinEntropySamples,
                  "differential_entropy: need at least 64 samples");
  detail::require(std::isfinite(spacing) && spacing > 0.0, "differential_entropy: spacing must be > 0");
  double mass = 0.0, h = 0.0;
  for (double r : density) {
    detail::require(std::isfinite(r) && r >= 0.0, "differential_entropy: density must be >= 0");
    mass += r;
    if (r > 0.0) h -= r * std::log(r);
  }
  detail::require(std::abs(mass * spacing - 1.0) <= kDensityTolerance,
                  "differential_entropy: density is not normalized");
  return h * spacing;
}

template <class Axis>
double differential_entropy(const SampledAmplitudes<Axis>& grid) {
  const auto rho = grid.density();
  return differential_entropy(rho, grid.spacing());
}

/// Closed-form differential entropy of a Gaussian: (1/2) ln(2 pi sigma^2 e).
inline double gaussian_information(double sigma) {
  detail::require(std::isfinite(sigma) && sigma > 0.0, "gaussian_information: sigma must be > 0");
  return 0.5 * std::log(2.0 * std::numbers::pi * sigma * sigma * std::numbers::e);
}

/// ln(h e / 2).
inline double uncertainty_bound(const UnitSystem& units = {}) {
  units.validate();
  return std::log(units.h * std::numbers::e / 2.0);
}

struct JointInformation {
  double position = 0.0;  // I(x)
  double momentum = 0.0;  // I(p)
  double joint = 0.0;     // I(x) + I(p)
  double bound = 0.0;     // ln(h e / 2)
  bool satisfied = false; // joint >= bound - kDiscretizationSlack

  double excess() const { return joint - bound; }
};

inline JointInformation joint_information(const WavefunctionGrid& psi, const UnitSystem& units = {}) {
  JointInformation r;
  r.position = differential_entropy(psi);
  r.momentum = differential_entropy(to_momentum(psi, units));
  r.joint = r.position + r.momentum;
  r.bound = uncertainty_bound(units);
  r.satisfied = r.joint >= r.bound - kDiscretizationSlack;
  return r;
}

/// S = k I(p): thermodynamic entropy carried by the momentum distribution.
inline double thermodynamic_entropy(const MomentumGrid& phi, const UnitSystem& units = {}) {
  units.validate();
  return units.k * differential_entropy(phi);
}

/// (sigma_x, sigma_p) pair of a Gaussian packet.
struct GaussianState {
  double sigma_x = 1.0;
  double sigma_p = 1.0;

  GaussianState() = default;
  GaussianState(double sx, double sp) : sigma_x(sx), sigma_p(sp) {
    detail::require(std::isfinite(sx) && sx > 0.0, "GaussianState: sigma_x must be > 0");
    detail::require(std::isfinite(sp) && sp > 0.0, "GaussianState: sigma_p must be > 0");
  }

  static GaussianState minimum_uncertainty(double sigma_x, const UnitSystem& units = {}) {
    return {sigma_x, units.hbar() / (2.0 * sigma_x)};
  }

  double product() const { return sigma_x * sigma_p; }

  bool is_minimum_uncertainty(const UnitSystem& units = {}) const {
    const double target = units.hbar() / 2.0;
    return std::abs(product() - target) <= 1e-12 * target;
  }

  // I(sigma_x) + I(sigma_p) from the closed form.
  double joint_information() const {
    return gaussian_information(sigma_x) + gaussian_information(sigma_p);
  }
};

/// Gaussian packet exp(-(x - c)^2 / 4 sigma^2 + i p_mean x / hbar) on
/// n samples covering c +- half_span_sigmas * sigma.
inline WavefunctionGrid gaussian_packet(double sigma_x, const UnitSystem& units = {},
                                        double center = 0.0, double mean_momentum = 0.0,
                                        std::size_t n = kDefaultSamples,
                                        double half_span_sigmas = kDefaultHalfSpanSigmas) {
  detail::require(std::isfinite(sigma_x) && sigma_x > 0.0, "gaussian_packet: sigma_x must be > 0");
  detail::require(n >= kMinEntropySamples, "gaussian_packet: need at least 64 samples");
  const double hbar = units.hbar();
  const double width = 2.0 * half_span_sigmas * sigma_x;
  const double dx = width / static_cast<double>(n);
  const double x0 = center - 0.5 * width;
  return WavefunctionGrid::sample(x0, dx, n, [&](double x) {
    const double u = (x - center) / sigma_x;
    const double ang = mean_momentum * x / hbar;
    return std::exp(-0.25 * u * u) * complex(std::cos(ang), std::sin(ang));
  });
}

/// Stationary state `mode` (>= 1) of an infinite well on [0, length], sampled
/// on a zero-padded grid `padding` box-lengths wide, centred on the box.
inline WavefunctionGrid box_mode(int mode, double length, std::size_t n = kDefaultSamples,
                                 double padding = 8.0) {
  detail::require(mode >= 1, "box_mode: mode must be >= 1");
  detail::require(std::isfinite(length) && length > 0.0, "box_mode: length must be > 0");
  detail::require(padding >= 1.0, "box_mode: padding must be >= 1");
  detail::require(n >= kMinEntropySamples, "box_mode: need at least 64 samples");
  const double width = padding * length;
  const double dx = width / static_cast<double>(n);
  const double x0 = 0.5 * length - 0.5 * width;
  return WavefunctionGrid::sample(x0, dx, n, [&](double x) {
    if (x <= 0.0 || x >= length) return 0.0;
    return std::sin(mode * std::numbers::pi * x / length);
  });
}

}  // namespace demonlab::qiur
