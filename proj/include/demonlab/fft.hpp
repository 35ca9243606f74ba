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

// Thin in-place wrappers over Eigen's FFT module (kissfft backend).

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace demonlab::fft {

using complex = std::complex<double>;

// X_k = sum_j x_j exp(-2 pi i jk / N), in place. Any N >= 1.
inline void forward(std::span<complex> a) {
  if (a.size() <= 1) return;  // identity; the backend faults on N = 1
  Eigen::FFT<double> engine;
  std::vector<complex> out(a.size());
  engine.fwd(out.data(), a.data(), static_cast<Eigen::Index>(a.size()));
  std::copy(out.begin(), out.end(), a.begin());
}

// x_j = sum_k X_k exp(+2 pi i jk / N), in place, without the 1/N factor.
inline void backward(std::span<complex> a) {
  if (a.size() <= 1) return;  // identity; the backend faults on N = 1
  Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<complex> out(a.size());
  engine.inv(out.data(), a.data(), static_cast<Eigen::Index>(a.size()));
  std::copy(out.begin(), out.end(), a.begin());
}

}  // namespace demonlab::fft
