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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "demonlab/speed_demon.hpp"

namespace {

using demonlab::UnitSystem;
using namespace demonlab::speed_demon;

constexpr double kArgonMass = 6.64e-26;
constexpr double kPrmsArgon = 2.87241334490703e-23;
constexpr double kDoorArgon = 1.83568952483106e-12;
constexpr double kSigmaPArgon = 2.87241334490703e-24;
constexpr double kSigmaXArgon = 1.83568952483106e-11;
constexpr double kPassageRatio10 = 0.0398776116767449231926;

GasSpec argon() { return {300.0, kArgonMass, 1}; }

TEST(SpeedDemon, RmsMomentumReduced) {
  EXPECT_NEAR(rms_momentum({1.0, 1.0, 1}), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(rms_momentum({4.0, 1.0, 1}) / rms_momentum({1.0, 1.0, 1}), 2.0, 1e-15);
}

TEST(SpeedDemon, RmsMomentumArgon) {
  const auto si = UnitSystem::si();
  EXPECT_NEAR(rms_momentum(argon(), si), kPrmsArgon, 1e-12 * kPrmsArgon);
  EXPECT_NEAR(rms_momentum(argon(), si) / 2.87e-23, 1.0, 0.01);
}

TEST(SpeedDemon, MaxDoorSize) {
  EXPECT_NEAR(max_door_size(1.0), 1.0 / (4.0 * std::numbers::pi), 1e-16);
  EXPECT_NEAR(max_door_size(2.0) / max_door_size(1.0), 0.5, 1e-15);
  const auto si = UnitSystem::si();
  EXPECT_NEAR(max_door_size(argon(), si), kDoorArgon, 1e-12 * kDoorArgon);
  EXPECT_NEAR(max_door_size(argon(), si) / 1.84e-12, 1.0, 0.01);
  EXPECT_THROW(max_door_size(0.0), demonlab::invalid_input);
  EXPECT_THROW(max_door_size(-1.0), demonlab::invalid_input);
}

TEST(SpeedDemon, PostMeasurementSpreadsReduced) {
  const auto s = post_measurement_spreads({1.0, 1.0, 1}, {1.0 / 3.0});
  EXPECT_NEAR(s.sigma_p, 1.0, 1e-15);
  EXPECT_NEAR(s.sigma_x, 1.0 / (4.0 * std::numbers::pi), 1e-16);
  EXPECT_FALSE(s.regime_warning);
}

TEST(SpeedDemon, PostMeasurementSpreadsArgon) {
  const auto si = UnitSystem::si();
  const auto probe = ProbeSpec::from_ratio(100.0, argon(), si);
  const auto s = post_measurement_spreads(argon(), probe, si);
  EXPECT_NEAR(s.sigma_p, kSigmaPArgon, 1e-12 * kSigmaPArgon);
  EXPECT_NEAR(s.sigma_x, kSigmaXArgon, 1e-12 * kSigmaXArgon);
  EXPECT_NEAR(s.sigma_x / 1.84e-11, 1.0, 0.01);
}

TEST(SpeedDemon, FeasibilityRatio) {
  const UnitSystem units;
  const GasSpec gas{1.0, 1.0, 1};
  EXPECT_NEAR(sorting_feasibility(gas, ProbeSpec::from_ratio(100.0, gas), units), 10.0, 1e-12);
  EXPECT_NEAR(sorting_feasibility(gas, ProbeSpec::from_ratio(1e4, gas), units), 100.0, 1e-10);
  const auto boundary = ProbeSpec::from_ratio(1.0, gas);
  EXPECT_NEAR(sorting_feasibility(gas, boundary, units), 1.0, 1e-12);
  EXPECT_TRUE(post_measurement_spreads(gas, boundary).regime_warning);
  EXPECT_FALSE(sorting_infeasible(1.0));
  EXPECT_TRUE(sorting_infeasible(10.0));
  const auto si = UnitSystem::si();
  EXPECT_NEAR(sorting_feasibility(argon(), ProbeSpec::from_ratio(100.0, argon(), si), si), 10.0, 1e-12);
  EXPECT_NEAR(kSigmaXArgon / kDoorArgon, 10.0, 1e-12);
}

TEST(SpeedDemonProperty, RatioIdentityAndMinimumUncertainty) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> logu(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    const UnitSystem units{std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng))};
    const GasSpec gas{std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng)), 1};
    const ProbeSpec probe{std::pow(10.0, logu(rng))};
    const double expected = std::sqrt(units.k * gas.temperature / (units.h * probe.nu_low));
    EXPECT_NEAR(sorting_feasibility(gas, probe, units) / expected, 1.0, 1e-12);
    const auto s = post_measurement_spreads(gas, probe, units);
    EXPECT_NEAR(s.sigma_x * s.sigma_p / (units.h / (4.0 * std::numbers::pi)), 1.0, 1e-14);
    if (probe.low_energy(gas, units)) EXPECT_GT(sorting_feasibility(gas, probe, units), 1.0);
  }
}

TEST(SpeedDemonProperty, LowerProbeFrequencyDelocalizes) {
  const GasSpec gas{1.0, 1.0, 1};
  Spreads prev = post_measurement_spreads(gas, {1.0});
  for (double nu = 0.5; nu > 1e-6; nu *= 0.5) {
    const auto s = post_measurement_spreads(gas, {nu});
    EXPECT_GT(s.sigma_x, prev.sigma_x);
    EXPECT_LT(s.sigma_p, prev.sigma_p);
    prev = s;
  }
}

TEST(SpeedDemon, SimulationMatchesErfAtRatioTen) {
  const GasSpec gas{1.0, 1.0, 1};
  const UnitSystem units;
  const auto probe = ProbeSpec::from_ratio(100.0, gas);
  const SortingGeometry door{max_door_size(gas, units)};
  const auto r = simulate_sorting(gas, probe, door, 1000000, 2024, units);
  EXPECT_NEAR(r.analytic, kPassageRatio10, 1e-15);
  EXPECT_TRUE(r.within(3.0)) << r.empirical << " vs " << r.analytic;
  EXPECT_NEAR(r.feasibility_ratio, 10.0, 1e-12);
  EXPECT_TRUE(r.infeasible);
  EXPECT_NEAR(r.injected_energy, 1e6 * probe.energy(), 1e-9);
}

TEST(SpeedDemon, LimitsOfPassage) {
  const GasSpec gas{1.0, 1.0, 1};
  const auto probe = ProbeSpec::from_ratio(100.0, gas);
  const auto huge = simulate_sorting(gas, probe, {1e6}, 10000, 1);
  EXPECT_DOUBLE_EQ(huge.empirical, 1.0);
  EXPECT_DOUBLE_EQ(huge.analytic, 1.0);
  // localized molecule: very high probe energy shrinks sigma_x far below d
  const auto tight = simulate_sorting(gas, {1e12}, {1.0}, 10000, 1);
  EXPECT_DOUBLE_EQ(tight.empirical, 1.0);
  EXPECT_NEAR(tight.analytic, 1.0, 1e-15);
}

TEST(SpeedDemon, EntropyBookkeepingHasNoNetDecrease) {
  for (const auto& [gas, units] : {std::pair{GasSpec{1.0, 1.0, 1}, UnitSystem{}},
                                   std::pair{argon(), UnitSystem::si()}}) {
    for (double ratio : {10.0, 100.0, 1e4}) {
      const auto probe = ProbeSpec::from_ratio(ratio, gas, units);
      const auto r = simulate_sorting(gas, probe, {max_door_size(gas, units)}, 100, 3, units);
      EXPECT_NEAR(r.momentum_entropy_change / units.k, -0.5 * std::log(ratio), 1e-6);
      EXPECT_NEAR(r.delocalization_entropy / units.k, 0.5 * std::log(ratio), 1e-6);
      EXPECT_GE(r.sorting_usable_entropy_change / units.k, -1e-9);
      EXPECT_NEAR(r.sorting_usable_entropy_change / units.k, 0.0, 1e-9);
    }
  }
}

TEST(SpeedDemon, Reproducible) {
  const GasSpec gas{1.0, 1.0, 1};
  const auto a = simulate_sorting(gas, {0.01}, {0.05}, 5000, 17);
  const auto b = simulate_sorting(gas, {0.01}, {0.05}, 5000, 17);
  EXPECT_EQ(a.passages, b.passages);
}

TEST(SpeedDemon, Validation) {
  const GasSpec gas{1.0, 1.0, 1};
  EXPECT_THROW(rms_momentum({0.0, 1.0, 1}), demonlab::invalid_input);
  EXPECT_THROW(rms_momentum({1.0, -1.0, 1}), demonlab::invalid_input);
  EXPECT_THROW(rms_momentum({1.0, 1.0, 0}), demonlab::invalid_input);
  EXPECT_THROW(simulate_sorting(gas, {0.01}, {0.0}, 10, 1), demonlab::invalid_input);
  EXPECT_THROW(simulate_sorting(gas, {0.01}, {1.0}, 0, 1), demonlab::invalid_input);
  EXPECT_THROW(simulate_sorting(gas, {-1.0}, {1.0}, 10, 1), demonlab::invalid_input);
  EXPECT_THROW(ProbeSpec::from_ratio(0.0, gas), demonlab::invalid_input);
}

}  // namespace
