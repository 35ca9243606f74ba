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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "demonlab/markov_io.hpp"

using namespace demonlab;
using namespace demonlab::markov;

TEST(RateMatrixText, ParsesRowsAndComments) {
  std::istringstream in("# three-state chain\n0 1 0\n1 0 2.5\n\n0 2.5 0\n");
  const auto r = read_rate_matrix_text(in);
  ASSERT_EQ(r.size(), 3);
  EXPECT_EQ(r(1, 2), 2.5);
  EXPECT_EQ(r(0, 2), 0.0);
}

TEST(RateMatrixText, RejectsGarbageAndRagged) {
  std::istringstream bad("0 x\n1 0\n");
  EXPECT_THROW(read_rate_matrix_text(bad), invalid_input);
  std::istringstream ragged("0 1 1\n1 0\n1 1 0\n");
  EXPECT_THROW(read_rate_matrix_text(ragged), invalid_input);
}

TEST(RateMatrixJson, ParsesRatesField) {
  std::istringstream in(R"({"rates": [[0, 3], [3, 0]]})");
  const auto r = read_rate_matrix_json(in);
  EXPECT_EQ(r(0, 1), 3.0);
}

TEST(RateMatrixJson, Errors) {
  std::istringstream missing(R"({"r": [[0, 1], [1, 0]]})");
  EXPECT_THROW(read_rate_matrix_json(missing), invalid_input);
  std::istringstream asym(R"({"rates": [[0, 1], [2, 0]]})");
  EXPECT_THROW(read_rate_matrix_json(asym), invalid_input);
  std::istringstream broken("{not json");
  EXPECT_THROW(read_rate_matrix_json(broken), invalid_input);
}

TEST(RateMatrixFile, ExtensionSelectsFormat) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto txt = dir / "demonlab_rates_test.txt";
  const auto js = dir / "demonlab_rates_test.json";
  std::ofstream(txt) << "0 2\n2 0\n";
  std::ofstream(js) << R"({"rates": [[0, 4], [4, 0]]})";
  EXPECT_EQ(load_rate_matrix(txt)(0, 1), 2.0);
  EXPECT_EQ(load_rate_matrix(js)(0, 1), 4.0);
  EXPECT_THROW(load_rate_matrix(dir / "does_not_exist.txt"), invalid_input);
  std::filesystem::remove(txt);
  std::filesystem::remove(js);
}

TEST(HTheoremReport, CsvAndJson) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  const auto rep = verify_h_theorem(RateMatrix(m), ProbDist{0.9, 0.1}, {0.0, 0.5});
  std::ostringstream os;
  write_csv(os, rep);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find("\r\n")), "t,S,dSdt,dist_to_eq");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  const auto j = to_json(rep);
  EXPECT_EQ(j["S"].size(), 2u);
  EXPECT_TRUE(j["monotone"].get<bool>());
}
