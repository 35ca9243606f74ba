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

// Single-molecule Szilard engine with the partition treated as a
// localization measurement.
//
// Halving the accessible length divides the position variance by 4, so the
// momentum variance of the (decohered, Gaussian) molecule grows by 4 and its
// momentum entropy rises by (k/2) ln 4 = k ln 2, whichever side it ends up
// on. The isothermal expansion back to the full box then draws kT ln 2 of
// heat from the bath. Per cycle the two entries cancel.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "demonlab/csv.hpp"
#include "demonlab/errors.hpp"
#include "demonlab/qiur.hpp"
#include "demonlab/random.hpp"
#include "demonlab/units.hpp"

namespace demonlab::szilard {

struct EngineBox {
  double length = 1.0;       // L
  double temperature = 1.0;  // T
  double mass = 1.0;         // m

  void validate() const {
    detail::require(std::isfinite(length) && length > 0.0, "EngineBox: L must be > 0");
    detail::require(std::isfinite(temperature) && temperature > 0.0, "EngineBox: T must be > 0");
    detail::require(std::isfinite(mass) && mass > 0.0, "EngineBox: m must be > 0");
  }
};

enum class Side { whole, left, right };

inline std::string_view to_string(Side s) {
  switch (s) {
    case Side::whole: return "whole";
    case Side::left: return "left";
    case Side::right: return "right";
  }
  return "?";
}

// paper (box-scale widths): sigma_x^2 = L^2, sigma_p^2 = h^2 / 4L^2, product h/2.
// exact_gaussian: sigma_x = L, sigma_p = hbar / (2 sigma_x).
// Both give the same variance ratios, hence the same entropy changes.
enum class VarianceConvention { paper, exact_gaussian };

inline std::string_view to_string(VarianceConvention c) {
  return c == VarianceConvention::paper ? "paper-convention" : "exact-gaussian";
}

struct MoleculeGaussian {
  qiur::GaussianState spread;
  Side side = Side::whole;
  double accessible_length = 1.0;

  double variance_x() const { return spread.sigma_x * spread.sigma_x; }
  double variance_p() const { return spread.sigma_p * spread.sigma_p; }
};

inline MoleculeGaussian initial_state(const EngineBox& box, const UnitSystem& units = {},
                                      VarianceConvention conv = VarianceConvention::paper) {
  box.validate();
  units.validate();
  const double sx = box.length;
  const double sp = conv == VarianceConvention::paper ? units.h / (2.0 * box.length)
                                                      : units.hbar() / (2.0 * sx);
  return {qiur::GaussianState(sx, sp), Side::whole, box.length};
}

struct Insertion {
  MoleculeGaussian state;
  double entropy_change = 0.0;  // k ln 2
};

/// Inserts the partition at the centre. The side is drawn from
/// substream(seed, 0) with probability 1/2 each; the entropy change is
/// computed before the side is looked at and never depends on it.
inline Insertion insert_partition(const MoleculeGaussian& state, std::uint64_t rng_seed,
                                  const UnitSystem& units = {}) {
  if (state.side != Side::whole) throw invalid_state("insert_partition: partition already inserted");
  units.validate();
  const double var_x = state.variance_x() / 4.0;
  const double var_p = state.variance_p() * 4.0;
  const double ds = 0.5 * units.k * std::log(var_p / state.variance_p());

  auto eng = substream(rng_seed, 0);
  const Side side = (eng() >> 63) ? Side::right : Side::left;
  return {{qiur::GaussianState(std::sqrt(var_x), std::sqrt(var_p)), side, 0.5 * state.accessible_length},
          ds};
}

struct Expansion {
  MoleculeGaussian state;
  double work = 0.0;                  // energy units, kT ln 2
  double bath_entropy_change = 0.0;   // -k ln 2
};

/// Quasi-static isothermal expansion of the one-molecule gas from L/2 to L
/// (W = int kT/V dV = kT ln 2), restoring the initial molecule state.
inline Expansion extract_work(const MoleculeGaussian& state, const EngineBox& box,
                              const UnitSystem& units = {},
                              VarianceConvention conv = VarianceConvention::paper) {
  if (state.side == Side::whole) throw invalid_state("extract_work: no partition present");
  box.validate();
  units.validate();
  const double work = units.k * box.temperature * std::numbers::ln2;
  return {initial_state(box, units, conv), work, -work / box.temperature};
}

struct LedgerEntry {
  std::int64_t cycle = 0;
  std::string label;
  std::string account;     // who pays: "agent" (partition insertion) or "bath"
  std::string side;        // molecule side after this step
  double entropy = 0.0;    // dS in units of k
  double work = 0.0;       // dW extracted, in units of kT
  double cumulative = 0.0; // running sum of entropy
};

/// Ordered record of entropy and work transfers. Cumulative entropy of the
/// universe must stay >= -1e-12 at every prefix of a completed cycle.
class EntropyLedger {
 public:
  static constexpr double kSlack = -1e-12;

  void add(std::int64_t cycle, std::string label, std::string account, std::string side,
           double entropy, double work) {
    total_entropy_ += entropy;
    total_work_ += work;
    min_prefix_ = std::min(min_prefix_, total_entropy_);
    entries_.push_back({cycle, std::move(label), std::move(account), std::move(side), entropy, work,
                        total_entropy_});
  }

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  double total_entropy() const { return total_entropy_; }
  double total_work() const { return total_work_; }
  double min_prefix() const { return min_prefix_; }
  bool nonnegative() const { return min_prefix_ >= kSlack; }

 private:
  std::vector<LedgerEntry> entries_;
  double total_entropy_ = 0.0;
  double total_work_ = 0.0;
  double min_prefix_ = 0.0;
};

/// Owns one scenario: a box, its molecule and the running ledger. Not
/// thread-safe; use one instance per thread.
class SzilardEngine {
 public:
  SzilardEngine(EngineBox box, std::uint64_t seed, UnitSystem units = {},
                VarianceConvention conv = VarianceConvention::paper)
      : box_(box), units_(units), conv_(conv), seed_(seed), state_(initial_state(box, units, conv)) {}

  const MoleculeGaussian& state() const { return state_; }
  const EntropyLedger& ledger() const { return ledger_; }
  std::int64_t cycles_completed() const { return cycle_; }

  double insert() {
    auto ins = insert_partition(state_, mix64(seed_ + static_cast<std::uint64_t>(cycle_)), units_);
    state_ = ins.state;
    ledger_.add(cycle_, "partition_insertion", "agent", std::string(to_string(state_.side)),
                ins.entropy_change / units_.k, 0.0);
    return ins.entropy_change;
  }

  double expand() {
    auto ex = extract_work(state_, box_, units_, conv_);
    state_ = ex.state;
    const double kt = units_.k * box_.temperature;
    ledger_.add(cycle_, "isothermal_expansion", "bath", std::string(to_string(state_.side)),
                ex.bath_entropy_change / units_.k, ex.work / kt);
    ++cycle_;
    return ex.work;
  }

  void run(std::int64_t n_cycles) {
    for (std::int64_t c = 0; c < n_cycles; ++c) {
      insert();
      expand();
    }
  }

 private:
  EngineBox box_;
  UnitSystem units_;
  VarianceConvention conv_;
  std::uint64_t seed_;
  MoleculeGaussian state_;
  EntropyLedger ledger_;
  std::int64_t cycle_ = 0;
};

inline EntropyLedger run_cycle(const EngineBox& box, std::int64_t n_cycles, std::uint64_t rng_seed,
                               const UnitSystem& units = {},
                               VarianceConvention conv = VarianceConvention::paper) {
  detail::require(n_cycles >= 1, "run_cycle: need at least one cycle");
  SzilardEngine engine(box, rng_seed, units, conv);
  engine.run(n_cycles);
  return engine.ledger();
}

// CSV: cycle, step_label, dS, dW, cum_dS.
inline void write_csv(std::ostream& os, const EntropyLedger& ledger) {
  csv::Writer w(os);
  w.header({"cycle", "step_label", "dS", "dW", "cum_dS"});
  for (const auto& e : ledger.entries())
    w.row({static_cast<long long>(e.cycle), e.label, e.entropy, e.work, e.cumulative});
}

inline nlohmann::ordered_json to_json(const EntropyLedger& ledger) {
  nlohmann::ordered_json j;
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : ledger.entries())
    arr.push_back({{"cycle", e.cycle}, {"step_label", e.label}, {"account", e.account},
                   {"side", e.side}, {"dS", e.entropy}, {"dW", e.work}, {"cum_dS", e.cumulative}});
  j["net_dS"] = ledger.total_entropy();
  j["net_dW"] = ledger.total_work();
  j["min_cum_dS"] = ledger.min_prefix();
  return j;
}

}  // namespace demonlab::szilard
