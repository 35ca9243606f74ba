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

// Five Szilard cycles: each insertion costs k ln 2, each expansion returns
// kT ln 2 of work and takes k ln 2 from the bath.

#include <iostream>

#include "demonlab/szilard.hpp"

int main() {
  using namespace demonlab::szilard;
  const auto ledger = run_cycle(EngineBox{1.0, 1.0, 1.0}, 5, 2026);
  for (const auto& e : ledger.entries())
    std::cout << e.cycle << ' ' << e.label << " (" << e.side << ")  dS=" << e.entropy
              << "  dW=" << e.work << "  cum=" << e.cumulative << '\n';
  std::cout << "net dS = " << ledger.total_entropy() << ", net work = " << ledger.total_work() << " kT\n";
  return ledger.nonnegative() ? 0 : 1;
}
