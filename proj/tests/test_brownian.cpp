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
#include <sstream>

#include "demonlab/brownian.hpp"

namespace {

using namespace demonlab::brownian;

TEST(Brownian, PlusMinusOneMsdMatchesStepCount) {
  const WalkSpec spec{100, StepLaw::plus_minus_one, 1.0, 100000, 7, 1.0};
  const auto r = simulate_walks(spec);
  const double n = 100.0;
  // var(x^2) = 2 n (n - 1) for the +-1 walk
  const double sigma = std::sqrt(2.0 * n * (n - 1.0) / 1e5);
  EXPECT_NEAR(sigma * 3.0, 1.34, 0.01);
  EXPECT_NEAR(r.msd.back(), n, 3.0 * sigma);
  EXPECT_NEAR(r.mean_displacement.back(), 0.0, 3.0 * std::sqrt(n / 1e5));
}

TEST(Brownian, SingleStepMsdIsOne) {
  const auto r = simulate_walks({1, StepLaw::plus_minus_one, 1.0, 1000, 3, 1.0});
  ASSERT_EQ(r.msd.size(), 1u);
  EXPECT_EQ(r.msd[0], 1.0);
  EXPECT_EQ(r.msd_stderr[0], 0.0);
}

TEST(Brownian, MeanDisplacementIsZero) {
  for (auto law : {StepLaw::plus_minus_one, StepLaw::gaussian}) {
    const auto r = simulate_walks({200, law, 1.7, 20000, 11, 1.0});
    int outside = 0;
    for (std::size_t i = 0; i < r.msd.size(); ++i)
      outside += std::abs(r.mean_displacement[i]) > 3.0 * r.mean_stderr[i];
    // correlated in time, but a few-percent exceedance is all noise allows
    EXPECT_LT(outside, 20);
  }
}

TEST(Brownian, FittedDiffusionConstant) {
  for (auto law : {StepLaw::plus_minus_one, StepLaw::gaussian}) {
    const auto r = simulate_walks({100, law, 0.8, 10000, 5, 0.25});
    EXPECT_NEAR(r.fitted_D / r.analytic_D, 1.0, 0.05);
    EXPECT_GT(r.r_squared, 0.999);
    EXPECT_EQ(r.fit_first_step, 10);
  }
  const WalkSpec s{10, StepLaw::gaussian, 2.0, 10, 1, 0.5};
  EXPECT_DOUBLE_EQ(simulate_walks(s).analytic_D, 4.0);
}

TEST(Brownian, GaussianStepMsdOracle) {
  const double sd = 1.5;
  const auto r = simulate_walks({50, StepLaw::gaussian, sd, 50000, 21, 1.0});
  for (std::size_t i = 9; i < r.msd.size(); i += 10) {
    const double t = static_cast<double>(i + 1);
    // var(x^2) = 2 (t sd^2)^2 for a centred normal
    const double sigma = std::sqrt(2.0) * t * sd * sd / std::sqrt(5e4);
    EXPECT_NEAR(r.msd[i], t * sd * sd, 4.0 * sigma);
    EXPECT_NEAR(r.msd_stderr[i], sigma, 0.1 * sigma);
  }
}

TEST(BrownianProperty, MsdNondecreasingWithinNoise) {
  const auto r = simulate_walks({300, StepLaw::plus_minus_one, 1.0, 20000, 99, 1.0});
  for (std::size_t i = 1; i < r.msd.size(); ++i) {
    const double noise = 3.0 * std::hypot(r.msd_stderr[i], r.msd_stderr[i - 1]);
    EXPECT_GE(r.msd[i] - r.msd[i - 1], -noise);
  }
  for (double m : r.msd) EXPECT_GE(m, 0.0);
}

TEST(BrownianProperty, SeedDeterminism) {
  const WalkSpec spec{60, StepLaw::gaussian, 1.0, 2000, 1234, 1.0};
  std::ostringstream a, b;
  write_csv(a, simulate_walks(spec));
  write_csv(b, simulate_walks(spec));
  EXPECT_EQ(a.str(), b.str());
  auto other = spec;
  other.seed = 1235;
  std::ostringstream c;
  write_csv(c, simulate_walks(other));
  EXPECT_NE(a.str(), c.str());
}

TEST(Brownian, HistogramMatchesGaussian) {
  for (auto law : {StepLaw::plus_minus_one, StepLaw::gaussian}) {
    const auto g = histogram_vs_gaussian({100, law, 1.0, 100000, 8, 1.0}, 100);
    EXPECT_TRUE(g.pass) << g.chi_squared_per_bin;
    EXPECT_LE(g.chi_squared_per_bin, 2.0);
    EXPECT_EQ(g.observed.size(), 20u);
    EXPECT_NEAR(g.variance_empirical, 100.0, 3.0 * std::sqrt(2.0 * 100 * 99 / 1e5));
  }
}

TEST(Brownian, HistogramRejectsShortWalks) {
  EXPECT_THROW(histogram_vs_gaussian({1, StepLaw::plus_minus_one, 1.0, 100000, 1, 1.0}, 1), demonlab::invalid_input);
  EXPECT_THROW(histogram_vs_gaussian({100, StepLaw::plus_minus_one, 1.0, 100, 1, 1.0}, 100), demonlab::invalid_input);
  EXPECT_THROW(histogram_vs_gaussian({100, StepLaw::plus_minus_one, 1.0, 10000, 1, 1.0}, 200), demonlab::invalid_input);
  EXPECT_THROW(histogram_vs_gaussian({100, StepLaw::gaussian, 1.0, 10000, 1, 1.0}, 100, 10), demonlab::invalid_input);
}

TEST(Brownian, DoublingStepWidthQuadruplesVariance) {
  const auto a = histogram_vs_gaussian({64, StepLaw::gaussian, 1.0, 50000, 4, 1.0}, 64);
  const auto b = histogram_vs_gaussian({64, StepLaw::gaussian, 2.0, 50000, 4, 1.0}, 64);
  EXPECT_NEAR(b.variance_expected / a.variance_expected, 4.0, 1e-14);
  // same seed: every Gaussian step is doubled, so the ratio is exact
  EXPECT_NEAR(b.variance_empirical / a.variance_empirical, 4.0, 1e-12);
}

TEST(Brownian, Validation) {
  EXPECT_THROW(simulate_walks({0, StepLaw::plus_minus_one, 1.0, 10, 1, 1.0}), demonlab::invalid_input);
  EXPECT_THROW(simulate_walks({10, StepLaw::plus_minus_one, 1.0, 0, 1, 1.0}), demonlab::invalid_input);
  EXPECT_THROW(simulate_walks({10, StepLaw::gaussian, 0.0, 10, 1, 1.0}), demonlab::invalid_input);
  EXPECT_THROW(simulate_walks({10, StepLaw::gaussian, 1.0, 10, 1, 0.0}), demonlab::invalid_input);
}

TEST(Brownian, CsvHeader) {
  std::ostringstream os;
  write_csv(os, simulate_walks({5, StepLaw::plus_minus_one, 1.0, 10, 1, 1.0}));
  EXPECT_EQ(os.str().substr(0, os.str().find('\r')), "t,mean_displacement,msd,msd_stderr");
}

}  // namespace
