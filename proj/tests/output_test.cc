// Copyright 2026 The MFG Equilibria Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "output.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "experiments.h"
#include "gtest/gtest.h"
#include "mfg/games.h"
#include "test_util.h"

namespace mfg {
namespace {

TEST(FormatDoubleTest, RoundTripsExactly) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> draw(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = draw(rng) * std::pow(10.0, i % 40 - 20);
    EXPECT_EQ(ParseDouble(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(std::isnan(ParseDouble(FormatDouble(std::nan("")))));
  EXPECT_THROW(ParseDouble("1.5x"), MfgError);
  EXPECT_THROW(ParseDouble(""), MfgError);
}

TEST(TraceCsvTest, HeaderAndRows) {
  ConvergenceTrace trace;
  trace.Append({.iteration = 0, .delta_re = 0.5});
  trace.Append({.iteration = 4, .exploitability = 0.25});
  const std::string csv = TraceCsv(trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTraceCsvHeader);
  EXPECT_NE(csv.find("\n0,0,0,0.5,0,0,0\n"), std::string::npos);
  EXPECT_NE(csv.find("\n4,0,0,0,0.25,0,0\n"), std::string::npos);
}

TEST(WriteFileAtomicTest, CreatesParentsAndReplaces) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "mfg_output_test";
  std::filesystem::remove_all(dir);
  const std::filesystem::path file = dir / "a" / "b.txt";
  WriteFileAtomic(file, "first");
  WriteFileAtomic(file, "second");
  EXPECT_EQ(ReadFile(file), "second");
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir / "a"),
                          std::filesystem::directory_iterator()),
            1);
  EXPECT_THROW(WriteFileAtomic("/proc/mfg/x.txt", "x"), IoError);
  EXPECT_THROW(ReadFile(dir / "missing"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(PolicyJsonTest, RoundTrips) {
  std::mt19937_64 rng(22);
  const Policy p = testing::RandomPolicy(MakeRps(), rng, 2, 5);
  const Policy q = PolicyFromJson(PolicyToJson(p));
  EXPECT_EQ(q.first_time(), 2);
  EXPECT_EQ(q.data(), p.data());
  nlohmann::json broken = PolicyToJson(p);
  broken["probabilities"][0].erase(0);
  EXPECT_THROW(PolicyFromJson(broken), MfgError);
}

TEST(ExperimentConfigTest, JsonRoundTripAndUnknownKeys) {
  ExperimentConfig c;
  c.game = "rps";
  c.algorithm = Algorithm::kRhParallel;
  c.solution_concept = Concept::kQStarRE;
  c.horizon_rh = 4;
  c.tolerance = std::numeric_limits<double>::infinity();
  c.alphas = {1.0, 0.5};
  const ExperimentConfig back = ConfigFromJson(ConfigToJson(c));
  EXPECT_EQ(ConfigToJson(back), ConfigToJson(c));
  EXPECT_TRUE(std::isinf(back.tolerance));
  EXPECT_THROW(ConfigFromJson({{"temperature", 1.0}}), ConfigError);
  EXPECT_THROW(ConfigFromJson({{"concept", "qre"}}), ConfigError);
  EXPECT_THROW(ConfigFromJson({{"beta", "high"}}), ConfigError);
}

TEST(ExperimentConfigTest, ValidateNamesFieldAndValue) {
  ExperimentConfig c;
  c.beta = 1.5;
  try {
    c.Validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "beta");
    EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
  }
}

TEST(BuildGameTest, KnownGamesAndErrors) {
  ExperimentConfig c;
  c.game = "random";
  c.num_states = 4;
  c.num_actions = 2;
  c.horizon = 3;
  const MfgModel model = BuildGame(c);
  EXPECT_EQ(model.horizon(), 3);
  EXPECT_EQ(GameMetadata(c, model)["prng"], "mt19937_64");
  c.game = "chess";
  EXPECT_THROW(BuildGame(c), ConfigError);
  c.game = "file:/nonexistent.json";
  c.horizon.reset();
  EXPECT_THROW(BuildGame(c), IoError);
}

}  // namespace
}  // namespace mfg
