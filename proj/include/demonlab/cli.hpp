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

// Scenario runner behind the `demonlab` executable.
//
// Invocation: demonlab <scenario> [options]. Options may also come from a
// flat `key = value` config file (--config FILE, '#' starts a comment),
// where `key` is an option name without leading dashes. Precedence is
// command-line flag > config file > DEMONLAB_SEED (seed only) > default.
// Exit status: 0 when every verdict holds, 1 on a failed verdict or a
// scenario error, 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "demonlab/brownian.hpp"
#include "demonlab/einstein.hpp"
#include "demonlab/fgr.hpp"
#include "demonlab/markov.hpp"
#include "demonlab/markov_io.hpp"
#include "demonlab/qiur.hpp"
#include "demonlab/qiur_io.hpp"
#include "demonlab/speed_demon.hpp"
#include "demonlab/szilard.hpp"
#include "demonlab/units.hpp"
#include "demonlab/version.hpp"

namespace demonlab::cli {

using json = nlohmann::ordered_json;

enum class Scenario { h_theorem, fgr, qiur, szilard, speed_demon, einstein, brownian };
enum class Format { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitScenarioFailure = 1;
inline constexpr int kExitUsage = 2;

inline const std::map<std::string, Scenario>& scenario_names() {
  static const std::map<std::string, Scenario> names = {
      {"h-theorem", Scenario::h_theorem}, {"fgr", Scenario::fgr},
      {"qiur", Scenario::qiur},           {"szilard", Scenario::szilard},
      {"speed-demon", Scenario::speed_demon}, {"einstein", Scenario::einstein},
      {"brownian", Scenario::brownian}};
  return names;
}

inline std::string to_string(Scenario s) {
  for (const auto& [name, value] : scenario_names())
    if (value == s) return name;
  return "?";
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help / --version: print text, exit 0.
class InfoRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HTheoremParams {
  std::string rates_file;
  int states = 2;
  double rate = 1.0;
  std::string topology = "ring";
  std::string p0;  // comma-separated; empty selects a default
  double t_end = 10.0;
  int samples = 101;
};

struct FgrParams {
  double gamma = 1.0;
  double matrix_element_sq = 0.0;
  double density_of_states = 0.0;
  std::int64_t samples = 100'000;
  int points = 51;
  double t_max = 0.0;  // 0 selects 5 / gamma
};

struct QiurParams {
  std::string state = "gaussian";
  std::string wavefunction_file;
  double sigma_x = 1.0;
  double mean_momentum = 0.0;
  std::size_t grid = qiur::kDefaultSamples;
  double span_sigmas = qiur::kDefaultHalfSpanSigmas;
  double box_length = 1.0;
  int mode = 1;
  double padding = 8.0;
};

struct SzilardParams {
  std::int64_t cycles = 1;
  double length = 1.0;
  double temperature = 1.0;
  double mass = 1.0;
  std::string convention = "paper";
};

struct SpeedDemonParams {
  double temperature = 1.0;
  double mass = 1.0;
  double nu_low = 0.0;
  double ratio = 100.0;  // kT / (h nu_low)
  bool use_nu_low = false;
  double door = 0.0;     // 0 selects the maximal door
  std::int64_t attempts = 100'000;
  std::int64_t molecules = 1;
};

struct EinsteinParams {
  double components = 3.0;
  double energy = 0.0;
  double nu = 0.0;
  double volume_ratio = 0.5;
  std::int64_t trials = 100'000;
  double temperature = 1.0;
  double probe_ratio = 10.0;  // h nu1 / kT
  double info_ratio = 1e-6;   // p / P0
  double microstates = 1e6;
};

struct BrownianParams {
  std::int64_t steps = 100;
  std::int64_t walkers = 10'000;
  std::string law = "pm1";
  double sigma_step = 1.0;
  double dt = 1.0;
  std::int64_t hist_step = -1;  // -1 selects n_steps when >= 25
};

struct RunConfig {
  Scenario scenario = Scenario::h_theorem;
  UnitSystem units;
  std::string unit_preset = "reduced";
  std::uint64_t seed = 0;
  Format format = Format::json;
  std::string output = "-";
  std::string config_file;

  HTheoremParams h_theorem;
  FgrParams fgr;
  QiurParams qiur;
  SzilardParams szilard;
  SpeedDemonParams speed_demon;
  EinsteinParams einstein;
  BrownianParams brownian;

  // Effective option values as strings, in declaration order.
  json echo = json::object();
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// key = value lines; '#' to end of line is a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline CLI::Option* find_option(CLI::App& app, const std::string& key) {
  if (key.size() == 1) return app.get_option_no_throw("-" + key);
  return app.get_option_no_throw("--" + key);
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) throw invalid_input("bad number '" + tok + "' in list");
    out.push_back(v);
  }
  return out;
}

inline void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--seed", cfg.seed, "RNG seed")->envname("DEMONLAB_SEED");
  sub.add_option("-o,--out", cfg.output, "Output path ('-' for stdout)");
  sub.add_option("--format", cfg.format, "Report format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json},
                                                                        {"csv", Format::csv}},
                                          CLI::ignore_case))
      ->default_str("json");
  sub.add_option("--units", cfg.unit_preset, "Constant preset")->check(CLI::IsMember({"reduced", "si"}));
  sub.add_option("--k", cfg.units.k, "Boltzmann constant (overrides preset)");
  sub.add_option("--h", cfg.units.h, "Planck constant (overrides preset)");
  sub.add_option("--config", cfg.config_file, "Config file of key = value lines");
}

inline void make_subcommands(CLI::App& app, RunConfig& cfg) {
  {
    auto& p = cfg.h_theorem;
    auto* s = app.add_subcommand("h-theorem", "Entropy growth under a symmetric master equation");
    add_common(*s, cfg);
    s->add_option("--rates", p.rates_file, "Rate matrix file (.json or whitespace text)");
    s->add_option("--states", p.states, "State count for the built-in topology")->check(CLI::Range(2, 4096));
    s->add_option("--rate", p.rate, "Rate of the built-in topology");
    s->add_option("--topology", p.topology, "Built-in topology")->check(CLI::IsMember({"ring", "complete"}));
    s->add_option("--p0", p.p0, "Initial distribution, comma separated");
    s->add_option("--t-end", p.t_end, "Final time");
    s->add_option("--samples", p.samples, "Number of time samples")->check(CLI::Range(2, 1'000'000));
  }
  {
    auto& p = cfg.fgr;
    auto* s = app.add_subcommand("fgr", "Golden-rule rate and stochastic decay");
    add_common(*s, cfg);
    s->add_option("--gamma", p.gamma, "Decay rate (ignored when --m2 and --dos are set)");
    s->add_option("--m2", p.matrix_element_sq, "|<i|H|f>|^2");
    s->add_option("--dos", p.density_of_states, "Density of final states");
    s->add_option("--samples", p.samples, "Number of decays to sample");
    s->add_option("--points", p.points, "Rows in the survival CSV")->check(CLI::Range(2, 100'000));
    s->add_option("--t-max", p.t_max, "Last time of the survival CSV (default 5/gamma)");
  }
  {
    auto& p = cfg.qiur;
    auto* s = app.add_subcommand("qiur", "Entropic uncertainty of a sampled wavefunction");
    add_common(*s, cfg);
    s->add_option("--state", p.state, "Built-in state")->check(CLI::IsMember({"gaussian", "box"}));
    s->add_option("--wavefunction", p.wavefunction_file, "CSV with columns x, re, im");
    s->add_option("--sigma-x", p.sigma_x, "Gaussian position spread");
    s->add_option("--mean-momentum", p.mean_momentum, "Gaussian mean momentum");
    s->add_option("--grid", p.grid, "Number of samples");
    s->add_option("--span-sigmas", p.span_sigmas, "Gaussian half-span in units of sigma_x");
    s->add_option("--box-length", p.box_length, "Box length");
    s->add_option("--mode", p.mode, "Box mode number");
    s->add_option("--padding", p.padding, "Grid width in box lengths");
  }
  {
    auto& p = cfg.szilard;
    auto* s = app.add_subcommand("szilard", "Szilard engine entropy ledger");
    add_common(*s, cfg);
    s->add_option("--cycles", p.cycles, "Number of engine cycles")->check(CLI::PositiveNumber);
    s->add_option("-L,--length", p.length, "Box length");
    s->add_option("-T,--temperature", p.temperature, "Bath temperature");
    s->add_option("-m,--mass", p.mass, "Molecule mass");
    s->add_option("--convention", p.convention, "Variance convention")
        ->check(CLI::IsMember({"paper", "exact-gaussian"}));
  }
  {
    auto& p = cfg.speed_demon;
    auto* s = app.add_subcommand("speed-demon", "Maxwell's speed-sorting demon");
    add_common(*s, cfg);
    s->add_option("-T,--temperature", p.temperature, "Gas temperature");
    s->add_option("-m,--mass", p.mass, "Molecule mass");
    auto* nu = s->add_option("--nu-low", p.nu_low, "Probe photon frequency");
    auto* ratio = s->add_option("--ratio", p.ratio, "kT / (h nu_low), alternative to --nu-low");
    nu->excludes(ratio);
    s->add_option("--door", p.door, "Door size (default: largest leak-free door)");
    s->add_option("--attempts", p.attempts, "Monte-Carlo passage attempts");
    s->add_option("--molecules", p.molecules, "Number of gas molecules");
  }
  {
    auto& p = cfg.einstein;
    auto* s = app.add_subcommand("einstein", "Volume fluctuations and the Brillouin balance");
    add_common(*s, cfg);
    s->add_option("-N,--components", p.components, "Number of independent components");
    s->add_option("--energy", p.energy, "Radiation energy E (with --nu gives N = E/h nu)");
    s->add_option("--nu", p.nu, "Radiation frequency");
    s->add_option("--volume-ratio", p.volume_ratio, "V / V0");
    s->add_option("--trials", p.trials, "Monte-Carlo trials");
    s->add_option("-T,--temperature", p.temperature, "Temperature for the Brillouin balance");
    s->add_option("--probe-ratio", p.probe_ratio, "h nu1 / kT of the demon's photon");
    s->add_option("--info-ratio", p.info_ratio, "p / P0");
    s->add_option("--microstates", p.microstates, "P0");
  }
  {
    auto& p = cfg.brownian;
    auto* s = app.add_subcommand("brownian", "Random-walk diffusion");
    add_common(*s, cfg);
    s->add_option("--steps", p.steps, "Steps per walk");
    s->add_option("--walkers", p.walkers, "Number of walkers");
    s->add_option("--law", p.law, "Step law")->check(CLI::IsMember({"pm1", "gaussian"}));
    s->add_option("--sigma-step", p.sigma_step, "Gaussian step spread");
    s->add_option("--dt", p.dt, "Time per step");
    s->add_option("--hist-step", p.hist_step, "Step for the histogram test (0 disables)");
  }
}

}  // namespace detail

/// Builds the effective configuration from argv, an optional config file
/// and the environment. Throws UsageError or InfoRequested.
inline RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app("demonlab: entropy ledgers for Maxwell's demon and friends", "demonlab");
  // -h stays free: --h is the Planck constant override.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  detail::make_subcommands(app, cfg);

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  // Config entries are spliced in right after the subcommand name so that
  // later command-line flags override them.
  if (!args.empty() && args[0].rfind("-", 0) != 0) {
    CLI::App* sub = app.get_subcommand_no_throw(args[0]);
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (sub && !config_path.empty()) {
      std::vector<std::string> injected;
      for (const auto& [key, value] : detail::read_config_file(config_path)) {
        CLI::Option* opt = detail::find_option(*sub, key);
        if (!opt || key == "config" || key == "help")
          throw UsageError("unknown config key '" + key + "' for scenario " + args[0]);
        if (key.size() == 1) {
          injected.push_back("-" + key);
          injected.push_back(value);
        } else {
          injected.push_back("--" + key + "=" + value);
        }
      }
      args.insert(args.begin() + 1, injected.begin(), injected.end());
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw InfoRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw InfoRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw InfoRequested(std::string(version) + "\n");
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.scenario = scenario_names().at(sub->get_name());

  if (cfg.unit_preset == "si") {
    const UnitSystem si = UnitSystem::si();
    if (sub->get_option("--k")->count() == 0) cfg.units.k = si.k;
    if (sub->get_option("--h")->count() == 0) cfg.units.h = si.h;
  }
  if (!(std::isfinite(cfg.units.k) && cfg.units.k > 0.0 && std::isfinite(cfg.units.h) && cfg.units.h > 0.0))
    throw UsageError("--k and --h must be positive");
  if (cfg.scenario == Scenario::speed_demon)
    cfg.speed_demon.use_nu_low = sub->get_option("--nu-low")->count() > 0;

  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help" || key == "config") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      value = res.empty() ? "" : res.back();
    } else {
      value = opt->get_default_str();
    }
    cfg.echo[key] = value;
  }
  cfg.echo["k"] = csv::format_number(cfg.units.k);
  cfg.echo["h"] = csv::format_number(cfg.units.h);
  return cfg;
}

struct RunReport {
  json body = json::object();  // everything except wall time
  std::string csv;             // table for --format csv
  bool passed = false;
  double wall_time = 0.0;

  std::string render(Format format) const {
    if (format == Format::csv) return csv;
    json full = body;
    full["wall_time_s"] = wall_time;
    return full.dump(2) + "\n";
  }
};

namespace detail {

inline void require_finite(const json& j, const std::string& path = "") {
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>())) throw numeric_error("non-finite value in report at " + path);
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) require_finite(v, path + "/" + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "/" + std::to_string(i));
  }
}

inline std::vector<double> linear_grid(double end, int samples) {
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = end * i / (samples - 1);
  return t;
}

inline void run_h_theorem(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.h_theorem;
  const markov::RateMatrix rates =
      !p.rates_file.empty() ? markov::load_rate_matrix(p.rates_file)
      : p.topology == "complete" ? markov::RateMatrix::complete(p.states, p.rate)
                                 : markov::RateMatrix::ring(p.states, p.rate);
  const Eigen::Index n = rates.size();
  Eigen::VectorXd v(n);
  if (!p.p0.empty()) {
    const auto list = parse_list(p.p0);
    demonlab::detail::require(static_cast<Eigen::Index>(list.size()) == n,
                              "--p0 has " + std::to_string(list.size()) + " entries, expected " +
                                  std::to_string(n));
    for (Eigen::Index i = 0; i < n; ++i) v[i] = list[static_cast<std::size_t>(i)];
  } else if (n == 2) {
    v << 0.99, 0.01;
  } else {
    v.setConstant(0.1 / static_cast<double>(n - 1));
    v[0] = 0.9;
  }
  const markov::ProbDist p0(v);
  demonlab::detail::require(std::isfinite(p.t_end) && p.t_end >= 0.0, "--t-end must be >= 0");
  const auto rep = markov::verify_h_theorem(rates, p0, linear_grid(p.t_end, p.samples), cfg.units);
  results = markov::to_json(rep);
  verdicts["entropy_nondecreasing"] = rep.monotone;
  verdicts["production_rate_nonnegative"] = rep.min_production_rate >= -1e-12 * cfg.units.k;
  std::ostringstream os;
  markov::write_csv(os, rep);
  table = os.str();
}

inline void run_fgr(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.fgr;
  double gamma = p.gamma;
  if (p.matrix_element_sq > 0.0 && p.density_of_states > 0.0) {
    gamma = fgr::golden_rule_rate({p.matrix_element_sq, p.density_of_states}, cfg.units);
    results["golden_rule_rate"] = gamma;
  }
  const auto level = fgr::ExcitedLevel::from_rate(gamma, cfg.units);
  const auto curve = fgr::simulate_decay(gamma, p.samples, cfg.seed);
  results["gamma"] = gamma;
  results["lifetime"] = fgr::lifetime(level);
  results["width"] = level.width;
  results["mean_waiting_time"] = curve.mean_waiting_time();
  results["mean_standard_error"] = curve.mean_standard_error();
  bool survival_ok = true;
  json checks = json::array();
  for (double x : {std::numbers::ln2, 1.0, 2.0}) {
    const double t = x / gamma;
    const double emp = curve.empirical(t), ana = curve.analytic(t), se = curve.standard_error(t);
    const bool ok = std::abs(emp - ana) <= 3.0 * se;
    survival_ok = survival_ok && ok;
    checks.push_back({{"t", t}, {"empirical", emp}, {"analytic", ana}, {"stderr", se}, {"within_3sigma", ok}});
  }
  results["survival_checks"] = checks;
  verdicts["survival_within_3sigma"] = survival_ok;
  verdicts["mean_within_3sigma"] =
      std::abs(curve.mean_waiting_time() - fgr::lifetime(gamma)) <= 3.0 * curve.mean_standard_error();
  const double t_max = p.t_max > 0.0 ? p.t_max : 5.0 / gamma;
  std::ostringstream os;
  fgr::write_csv(os, curve, linear_grid(t_max, p.points));
  table = os.str();
}

inline void run_qiur(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.qiur;
  const qiur::WavefunctionGrid psi =
      !p.wavefunction_file.empty() ? qiur::load_wavefunction_csv(p.wavefunction_file)
      : p.state == "box"
          ? qiur::box_mode(p.mode, p.box_length, p.grid, p.padding)
          : qiur::gaussian_packet(p.sigma_x, cfg.units, 0.0, p.mean_momentum, p.grid, p.span_sigmas);
  const auto info = qiur::joint_information(psi, cfg.units);
  results = qiur::to_json(info);
  results["excess"] = info.excess();
  results["samples"] = psi.size();
  verdicts["bound_satisfied"] = info.satisfied;
  std::ostringstream os;
  csv::Writer w(os);
  w.header({"I_x", "I_p", "joint", "bound", "satisfied"});
  w.row({info.position, info.momentum, info.joint, info.bound, info.satisfied});
  table = os.str();
}

inline void run_szilard(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.szilard;
  const szilard::EngineBox box{p.length, p.temperature, p.mass};
  const auto conv = p.convention == "paper" ? szilard::VarianceConvention::paper
                                            : szilard::VarianceConvention::exact_gaussian;
  const auto ledger = szilard::run_cycle(box, p.cycles, cfg.seed, cfg.units, conv);
  const double insertion = ledger.entries().front().entropy * cfg.units.k;
  results["convention"] = std::string(szilard::to_string(conv));
  results["insertion_dS"] = insertion;
  results["ledger"] = szilard::to_json(ledger);
  verdicts["insertion_equals_k_ln2"] =
      std::abs(insertion - cfg.units.k * std::numbers::ln2) <= 1e-12 * cfg.units.k;
  verdicts["ledger_nonnegative"] = ledger.nonnegative();
  verdicts["net_dS_zero"] = std::abs(ledger.total_entropy()) <= 1e-12;
  std::ostringstream os;
  szilard::write_csv(os, ledger);
  table = os.str();
}

inline void run_speed_demon(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.speed_demon;
  const speed_demon::GasSpec gas{p.temperature, p.mass, p.molecules};
  gas.validate();
  const speed_demon::ProbeSpec probe =
      p.use_nu_low ? speed_demon::ProbeSpec{p.nu_low} : speed_demon::ProbeSpec::from_ratio(p.ratio, gas, cfg.units);
  const double door = p.door > 0.0 ? p.door : speed_demon::max_door_size(gas, cfg.units);
  const auto r = speed_demon::simulate_sorting(gas, probe, {door}, p.attempts, cfg.seed, cfg.units);
  results["nu_low"] = probe.nu_low;
  results["p_rms"] = r.p_rms;
  results["max_door_size"] = r.max_door_size;
  results["door_size"] = r.door_size;
  results["sigma_p"] = r.sigma_p;
  results["sigma_x"] = r.sigma_x;
  results["feasibility_ratio"] = r.feasibility_ratio;
  results["passage_empirical"] = r.empirical;
  results["passage_analytic"] = r.analytic;
  results["passage_stderr"] = r.standard_error;
  results["injected_energy"] = r.injected_energy;
  results["dS_momentum"] = r.momentum_entropy_change;
  results["dS_delocalization"] = r.delocalization_entropy;
  results["dS_gas"] = r.sorting_usable_entropy_change;
  results["regime_warning"] = r.regime_warning;
  results["verdict"] = r.infeasible ? "sorting infeasible" : "sorting feasible";
  verdicts["sorting_infeasible"] = r.infeasible;
  verdicts["passage_within_3sigma"] = r.within(3.0);
  std::ostringstream os;
  csv::Writer w(os);
  w.header({"quantity", "value"});
  for (const auto& [k, v] : results.items())
    if (v.is_number()) w.row({k, v.get<double>()});
  table = os.str();
}

inline void run_einstein(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.einstein;
  einstein::FluctuationSpec spec =
      (p.energy > 0.0 && p.nu > 0.0)
          ? einstein::FluctuationSpec::from_energy(p.energy, p.nu, p.volume_ratio, 1.0, cfg.units)
          : einstein::FluctuationSpec{p.components, p.volume_ratio, 1.0};
  const double ds = einstein::gas_entropy_change(spec, cfg.units);
  const double w = einstein::fluctuation_probability(spec);
  results["N"] = spec.n_components;
  results["volume_ratio"] = spec.volume_ratio();
  results["dS"] = ds;
  results["W"] = w;
  if (p.energy > 0.0 && p.nu > 0.0) {
    results["radiation_dS"] = einstein::radiation_entropy_change(p.energy, p.nu, p.volume_ratio, 1.0, cfg.units);
    results["N_remainder"] = spec.rounding_remainder();
  }
  verdicts["entropy_probability_identity"] = std::abs(std::exp(ds / cfg.units.k) - w) <= 1e-12;
  if (spec.count() <= einstein::kMaxMonteCarloComponents) {
    const auto mc = einstein::monte_carlo_fluctuation(spec, p.trials, cfg.seed);
    results["mc_probability"] = mc.probability;
    results["mc_stderr"] = mc.standard_error;
    verdicts["monte_carlo_within_3sigma"] = mc.within(3.0);
  }
  const einstein::BrillouinSpec bs{p.temperature, p.probe_ratio * cfg.units.k * p.temperature / cfg.units.h,
                                   p.microstates, p.info_ratio * p.microstates};
  const auto b = einstein::brillouin_balance(bs, cfg.units);
  results["brillouin"] = {{"dS_demon", b.demon_entropy},
                          {"dS_gas_approx", b.gas_entropy_approx},
                          {"dS_gas_exact", b.gas_entropy_exact},
                          {"net", b.net},
                          {"net_exact", b.net_exact},
                          {"probe_regime", b.probe_regime}};
  verdicts["brillouin_net_positive"] = b.net > 0.0 && b.net_exact > 0.0;
  std::ostringstream os;
  csv::Writer wr(os);
  wr.header({"quantity", "value"});
  for (const auto& [k, v] : results.items())
    if (v.is_number()) wr.row({k, v.get<double>()});
  for (const auto& [k, v] : results["brillouin"].items())
    if (v.is_number()) wr.row({"brillouin." + k, v.get<double>()});
  table = os.str();
}

inline void run_brownian(const RunConfig& cfg, json& results, json& verdicts, std::string& table) {
  const auto& p = cfg.brownian;
  brownian::WalkSpec spec;
  spec.n_steps = p.steps;
  spec.n_walkers = p.walkers;
  spec.law = p.law == "gaussian" ? brownian::StepLaw::gaussian : brownian::StepLaw::plus_minus_one;
  spec.sigma_step = p.sigma_step;
  spec.dt = p.dt;
  spec.seed = cfg.seed;
  const auto rep = brownian::simulate_walks(spec);
  const std::size_t last = rep.msd.size() - 1;
  const double expected = static_cast<double>(spec.n_steps) * spec.step_variance();
  results["msd_final"] = rep.msd[last];
  results["msd_expected"] = expected;
  results["msd_stderr"] = rep.msd_stderr[last];
  results["mean_final"] = rep.mean_displacement[last];
  results["mean_stderr"] = rep.mean_stderr[last];
  results["fitted_D"] = rep.fitted_D;
  results["analytic_D"] = rep.analytic_D;
  results["r_squared"] = rep.r_squared;
  const double se_msd = std::max(rep.msd_stderr[last], 1e-300);
  verdicts["msd_within_3sigma"] = std::abs(rep.msd[last] - expected) <= 3.0 * se_msd ||
                                  rep.msd[last] == expected;
  verdicts["mean_within_3sigma"] = std::abs(rep.mean_displacement[last]) <= 3.0 * rep.mean_stderr[last] ||
                                   rep.mean_displacement[last] == 0.0;
  if (spec.n_steps >= 20) verdicts["msd_linear_r2"] = rep.r_squared > 0.999;
  if (spec.n_walkers >= 10'000)
    verdicts["diffusion_constant_within_5pct"] = std::abs(rep.fitted_D - rep.analytic_D) <= 0.05 * rep.analytic_D;
  const std::int64_t hist = p.hist_step < 0 ? (spec.n_steps >= brownian::kMinHistogramStep ? spec.n_steps : 0)
                                            : p.hist_step;
  if (hist > 0 && spec.n_walkers >= brownian::kMinHistogramWalkers) {
    const auto g = brownian::histogram_vs_gaussian(spec, hist);
    results["histogram"] = {{"step", g.step},
                            {"chi_squared_per_bin", g.chi_squared_per_bin},
                            {"variance_empirical", g.variance_empirical},
                            {"variance_expected", g.variance_expected}};
    verdicts["histogram_gaussian"] = g.pass;
  }
  std::ostringstream os;
  brownian::write_csv(os, rep);
  table = os.str();
}

}  // namespace detail

/// Runs the configured scenario. Module errors propagate as exceptions.
inline RunReport run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.units.validate();
  json results = json::object();
  json verdicts = json::object();
  std::string table;
  switch (cfg.scenario) {
    case Scenario::h_theorem: detail::run_h_theorem(cfg, results, verdicts, table); break;
    case Scenario::fgr: detail::run_fgr(cfg, results, verdicts, table); break;
    case Scenario::qiur: detail::run_qiur(cfg, results, verdicts, table); break;
    case Scenario::szilard: detail::run_szilard(cfg, results, verdicts, table); break;
    case Scenario::speed_demon: detail::run_speed_demon(cfg, results, verdicts, table); break;
    case Scenario::einstein: detail::run_einstein(cfg, results, verdicts, table); break;
    case Scenario::brownian: detail::run_brownian(cfg, results, verdicts, table); break;
  }
  RunReport rep;
  rep.passed = true;
  for (const auto& [k, v] : verdicts.items()) rep.passed = rep.passed && v.get<bool>();
  rep.body["tool"] = "demonlab";
  rep.body["version"] = version;
  rep.body["scenario"] = to_string(cfg.scenario);
  rep.body["seed"] = cfg.seed;
  rep.body["config"] = cfg.echo;
  rep.body["results"] = std::move(results);
  rep.body["verdicts"] = std::move(verdicts);
  rep.body["passed"] = rep.passed;
  detail::require_finite(rep.body);
  rep.csv = std::move(table);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Whole command-line behaviour, returning the process exit status.
inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = parse_config(argc, argv);
  } catch (const InfoRequested& info) {
    out << info.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "demonlab: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    const RunReport rep = run(cfg);
    const std::string text = rep.render(cfg.format);
    if (cfg.output.empty() || cfg.output == "-") {
      out << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) {
        err << "demonlab: cannot write '" << cfg.output << "'\n";
        return kExitScenarioFailure;
      }
      f << text;
    }
    if (!rep.passed) {
      err << "demonlab: " << to_string(cfg.scenario) << ": one or more verdicts failed\n";
      return kExitScenarioFailure;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "demonlab: " << to_string(cfg.scenario) << ": " << e.what() << "\n";
    return kExitScenarioFailure;
  }
}

}  // namespace demonlab::cli
