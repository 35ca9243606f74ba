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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "demonlab/cli.hpp"

namespace {

namespace fs = std::filesystem;
using demonlab::cli::parse_config;
using json = nlohmann::ordered_json;

struct Result {
  int code = -1;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "demonlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = demonlab::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

demonlab::cli::RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "demonlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

json strip_wall_time(const std::string& text) {
  json j = json::parse(text);
  j.erase("wall_time_s");
  return j;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("demonlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    unsetenv("DEMONLAB_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("DEMONLAB_SEED");
  }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path dir_;
};

using Cli = TempDir;

TEST_F(Cli, DirectMapping) {
  const auto cfg = parse({"szilard", "--cycles", "10", "--seed", "7"});
  EXPECT_EQ(cfg.scenario, demonlab::cli::Scenario::szilard);
  EXPECT_EQ(cfg.szilard.cycles, 10);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.szilard.length, 1.0);
  EXPECT_EQ(cfg.szilard.temperature, 1.0);
  EXPECT_EQ(cfg.units.k, 1.0);
  EXPECT_EQ(cfg.units.h, 1.0);
}

TEST_F(Cli, FlagsBeatConfigFile) {
  const auto path = write("run.cfg", "# bath\nT = 300\nlength = 2.5\n\ncycles = 3  # trailing\n");
  const auto cfg = parse({"szilard", "--config", path, "-T", "150"});
  EXPECT_EQ(cfg.szilard.temperature, 150.0);
  EXPECT_EQ(cfg.szilard.length, 2.5);
  EXPECT_EQ(cfg.szilard.cycles, 3);
  // order on the command line does not matter
  const auto cfg2 = parse({"szilard", "--temperature=150", "--config=" + path});
  EXPECT_EQ(cfg2.szilard.temperature, 150.0);
  const auto cfg3 = parse({"szilard", "--config", path});
  EXPECT_EQ(cfg3.szilard.temperature, 300.0);
}

TEST_F(Cli, ConfigBeatsEnvironmentSeed) {
  setenv("DEMONLAB_SEED", "99", 1);
  EXPECT_EQ(parse({"brownian"}).seed, 99u);
  const auto path = write("seed.cfg", "seed = 5\n");
  EXPECT_EQ(parse({"brownian", "--config", path}).seed, 5u);
  EXPECT_EQ(parse({"brownian", "--config", path, "--seed", "6"}).seed, 6u);
}

TEST_F(Cli, UnknownConfigKeyIsUsageError) {
  const auto path = write("bad.cfg", "temperature = 2\nbogus = 1\n");
  const auto r = run_cli({"szilard", "--config", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
  // a key valid for another scenario is still unknown here
  const auto other = write("other.cfg", "walkers = 10\n");
  EXPECT_EQ(run_cli({"szilard", "--config", other}).code, 2);
}

TEST_F(Cli, MalformedConfigLineIsUsageError) {
  const auto path = write("bad.cfg", "temperature 2\n");
  EXPECT_EQ(run_cli({"szilard", "--config", path}).code, 2);
  EXPECT_EQ(run_cli({"szilard", "--config", (dir_ / "missing.cfg").string()}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"no-such-scenario"}).code, 2);
  EXPECT_EQ(run_cli({"szilard", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run_cli({"szilard", "--cycles", "ten"}).code, 2);
  EXPECT_EQ(run_cli({"szilard", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"speed-demon", "--ratio", "10", "--nu-low", "0.1"}).code, 2);
  EXPECT_EQ(run_cli({"szilard", "--k", "-1"}).code, 2);
}

TEST_F(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  const auto v = run_cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(DEMONLAB_VERSION), std::string::npos);
  EXPECT_EQ(run_cli({"szilard", "--help"}).code, 0);
}

TEST_F(Cli, RatioAlias) {
  const auto cfg = parse({"speed-demon", "--ratio", "100"});
  EXPECT_FALSE(cfg.speed_demon.use_nu_low);
  const auto r = run_cli({"speed-demon", "--ratio", "100", "--attempts", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const double nu = j["results"]["nu_low"].get<double>();
  EXPECT_NEAR(nu, 1.0 / 100.0, 1e-15);
  EXPECT_NEAR(j["results"]["feasibility_ratio"].get<double>(), 10.0, 1e-12);
  EXPECT_EQ(j["results"]["verdict"], "sorting infeasible");
}

TEST_F(Cli, SzilardReport) {
  const auto r = run_cli({"szilard"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["insertion_dS"].get<double>(), 0.693147180559945, 1e-12);
  EXPECT_NEAR(j["results"]["ledger"]["net_dS"].get<double>(), 0.0, 1e-15);
  EXPECT_EQ(j["tool"], "demonlab");
  EXPECT_EQ(j["version"], DEMONLAB_VERSION);
  EXPECT_TRUE(j["passed"].get<bool>());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected{"tool", "version", "scenario", "seed", "config",
                                          "results", "verdicts", "passed", "wall_time_s"};
  EXPECT_EQ(keys, expected);
}

TEST_F(Cli, EquilibriumHTheoremIsFlat) {
  const auto r = run_cli({"h-theorem", "--states", "4", "--p0", "0.25,0.25,0.25,0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const auto& s = j["results"]["S"];
  for (const auto& v : s) EXPECT_NEAR(v.get<double>(), std::log(4.0), 1e-12);
}

TEST_F(Cli, EveryScenarioPassesWithDefaults) {
  for (const char* s : {"h-theorem", "fgr", "qiur", "szilard", "speed-demon", "einstein", "brownian"}) {
    const auto r = run_cli({s});
    EXPECT_EQ(r.code, 0) << s << ": " << r.err;
    EXPECT_NO_THROW(json::parse(r.out)) << s;
  }
}

TEST_F(Cli, ReportsAreReproducible) {
  for (const char* s : {"fgr", "speed-demon", "einstein", "brownian", "szilard"}) {
    const auto a = run_cli({s, "--seed", "31"});
    const auto b = run_cli({s, "--seed", "31"});
    ASSERT_EQ(a.code, 0) << s;
    EXPECT_EQ(strip_wall_time(a.out).dump(), strip_wall_time(b.out).dump()) << s;
    const auto ca = run_cli({s, "--seed", "31", "--format", "csv"});
    const auto cb = run_cli({s, "--seed", "31", "--format", "csv"});
    EXPECT_EQ(ca.out, cb.out) << s;
  }
}

TEST_F(Cli, CsvFormatHasHeader) {
  const auto r = run_cli({"szilard", "--cycles", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find("\r\n")), "cycle,step_label,dS,dW,cum_dS");
}

TEST_F(Cli, WritesOutputFile) {
  const auto out = (dir_ / "report.json").string();
  const auto r = run_cli({"einstein", "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(json::parse(ss.str())["scenario"], "einstein");
}

TEST_F(Cli, AsymmetricRatesFileIsScenarioFailure) {
  const auto path = write("asym.txt", "0 1\n2 0\n");
  const auto r = run_cli({"h-theorem", "--rates", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("h-theorem"), std::string::npos);
}

TEST_F(Cli, RatesFromJson) {
  const auto path = write("rates.json", R"({"rates": [[0, 1, 0], [1, 0, 2], [0, 2, 0]]})");
  const auto r = run_cli({"h-theorem", "--rates", path, "--p0", "0.7,0.2,0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  for (const auto& v : j["results"]["equilibrium"]) EXPECT_NEAR(v.get<double>(), 1.0 / 3.0, 1e-12);
}

TEST_F(Cli, WavefunctionFile) {
  const auto psi = demonlab::qiur::gaussian_packet(1.0);
  std::ostringstream os;
  os.precision(17);
  os << "x,re,im\n";
  for (std::size_t j = 0; j < psi.size(); ++j)
    os << psi.coordinate(j) << ',' << psi.amplitudes()[j].real() << ',' << psi.amplitudes()[j].imag() << '\n';
  const auto path = write("psi.csv", os.str());
  const auto r = run_cli({"qiur", "--wavefunction", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["results"]["joint"].get<double>(), 0.306852819440055, 1e-3);
}

TEST_F(Cli, SiPresetAndOverrides) {
  const auto cfg = parse({"speed-demon", "--units", "si", "-T", "300", "-m", "6.64e-26"});
  EXPECT_EQ(cfg.units.k, 1.380649e-23);
  EXPECT_EQ(cfg.units.h, 6.62607015e-34);
  const auto custom = parse({"speed-demon", "--units", "si", "--k", "2"});
  EXPECT_EQ(custom.units.k, 2.0);
  EXPECT_EQ(custom.units.h, 6.62607015e-34);
  const auto r = run_cli({"speed-demon", "--units", "si", "-T", "300", "-m", "6.64e-26", "--ratio", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["p_rms"].get<double>() / 2.87241334490703e-23, 1.0, 1e-12);
  EXPECT_NEAR(j["results"]["sigma_x"].get<double>() / 1.83568952483106e-11, 1.0, 1e-12);
}

TEST_F(Cli, ConfigEchoShowsEffectiveValues) {
  const auto path = write("e.cfg", "temperature = 300\n");
  const auto r = run_cli({"szilard", "--config", path, "--cycles", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["temperature"], "300");
  EXPECT_EQ(j["config"]["cycles"], "4");
  EXPECT_EQ(j["config"]["length"], "1");
}

TEST_F(Cli, ModuleErrorsExitOne) {
  EXPECT_EQ(run_cli({"szilard", "-L", "-1"}).code, 1);
  EXPECT_EQ(run_cli({"einstein", "--volume-ratio", "1.5"}).code, 1);
  EXPECT_EQ(run_cli({"h-theorem", "--rates", (dir_ / "missing.txt").string()}).code, 1);
}

TEST_F(Cli, ExecutableExitCodes) {
  const std::string exe = DEMONLAB_EXE;
  EXPECT_EQ(std::system((exe + " szilard > /dev/null").c_str()), 0);
  const int usage = std::system((exe + " szilard --bogus > /dev/null 2>&1").c_str());
  EXPECT_TRUE(WIFEXITED(usage));
  EXPECT_EQ(WEXITSTATUS(usage), 2);
}

}  // namespace
