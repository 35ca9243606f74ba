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

// Argon at 300 K probed with h nu = kT / 100, in SI units.

#include <cstdio>

#include "demonlab/speed_demon.hpp"

int main() {
  using namespace demonlab;
  using namespace demonlab::speed_demon;
  const UnitSystem si = UnitSystem::si();
  const GasSpec argon{300.0, 6.64e-26, 1};
  const ProbeSpec probe = ProbeSpec::from_ratio(100.0, argon, si);
  const auto post = post_measurement_spreads(argon, probe, si);
  std::printf("p_rms        = %.4e kg m/s\n", rms_momentum(argon, si));
  std::printf("max door d   = %.4e m\n", max_door_size(argon, si));
  std::printf("sigma_p post = %.4e kg m/s\n", post.sigma_p);
  std::printf("sigma_x post = %.4e m\n", post.sigma_x);
  std::printf("sigma_x / d  = %.6f\n", sorting_feasibility(argon, probe, si));
  return 0;
}
