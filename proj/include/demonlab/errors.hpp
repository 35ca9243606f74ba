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

#include <stdexcept>
#include <string>

namespace demonlab {

// Raised when an argument violates an operation's precondition.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values or loss of positivity during a computation.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The entropy-production formula hit its logarithmic singularity
// (a zero probability on a state with a nonzero incident rate).
class divergence_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// The transition graph has more than one communicating class.
class non_unique_equilibrium : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation invoked in the wrong scenario state (e.g. partition inserted twice).
class invalid_state : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw invalid_input(what);
}

}  // namespace detail
}  // namespace demonlab
