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

#include "mfg/games.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mfg/model.h"

namespace mfg {
namespace {

std::vector<double> Row(const MfgModel& model, int t, int x, int u,
                        const std::vector<double>& mu) {
  std::vector<double> next(model.num_states());
  model.Transition(t, x, u, mu, next);
  return next;
}

TEST(SisTest, TablesMatchDefinition) {
  const MfgModel model = MakeSis();
  EXPECT_EQ(model.horizon(), 50);
  EXPECT_EQ(model.initial_mf()[sis::kInfected], 0.1);
  const std::vector<double> mu = {0.6, 0.4};
  EXPECT_NEAR(Row(model, 0, sis::kSusceptible, sis::kNoQuarantine, mu)[1],
              0.81 * 0.4, 1e-15);
  EXPECT_EQ(Row(model, 0, sis::kSusceptible, sis::kQuarantine, mu)[1], 0.0);
  EXPECT_NEAR(Row(model, 0, sis::kInfected, sis::kQuarantine, mu)[0], 0.4,
              1e-15);
  EXPECT_EQ(model.Reward(0, sis::kSusceptible, sis::kNoQuarantine, mu), 0.0);
  EXPECT_EQ(model.Reward(0, sis::kSusceptible, sis::kQuarantine, mu), -1.5);
  EXPECT_EQ(model.Reward(0, sis::kInfected, sis::kNoQuarantine, mu), -1.0);
  EXPECT_EQ(model.Reward(0, sis::kInfected, sis::kQuarantine, mu), -1.5);
  EXPECT_THROW(MakeSis({.healing_rate = 1.5}), MfgError);
}

TEST(RpsTest, TablesMatchDefinition) {
  const MfgModel model = MakeRps();
  EXPECT_EQ(model.horizon(), 10);
  EXPECT_EQ(model.initial_mf()[rps::kStart], 1.0);
  const std::vector<double> mu = {0.1, 0.2, 0.3, 0.4};
  const auto jump = Row(model, 0, rps::kStart, rps::kToPaper, mu);
  EXPECT_NEAR(jump[rps::kPaper], 0.7, 1e-15);
  EXPECT_NEAR(jump[rps::kStart], 0.3, 1e-15);
  const auto stay = Row(model, 0, rps::kRock, rps::kToRock, mu);
  EXPECT_EQ(stay[rps::kRock], 1.0);
  EXPECT_NEAR(model.Reward(0, rps::kRock, 0, mu), -10 * 0.3 + 1 * 0.4, 1e-15);
  EXPECT_NEAR(model.Reward(0, rps::kPaper, 0, mu), -10 * 0.4 + 10 * 0.2, 1e-15);
  EXPECT_NEAR(model.Reward(0, rps::kScissor, 0, mu), -1 * 0.2 + 10 * 0.3,
              1e-15);
  EXPECT_EQ(model.Reward(0, rps::kStart, 1, mu), 0.0);
}

TEST(RandomGameTest, UnitIntervalOpenBounds) {
  EXPECT_GT(UnitIntervalOpen(0), 0.0);
  EXPECT_LT(UnitIntervalOpen(~std::uint64_t{0}), 1.0);
  EXPECT_EQ(UnitIntervalOpen(std::uint64_t{1} << 63), 0.5 + 0x1.0p-53);
}

TEST(RandomGameTest, FirstDrawsFollowDocumentedOrder) {
  const MfgModel model =
      MakeRandom({.num_states = 3, .num_actions = 2, .horizon = 2, .seed = 9});
  std::mt19937_64 engine(9);
  double raw[3][3][2];  // [x][x'][u] at t = 0
  for (auto& a : raw) {
    for (auto& b : a) {
      for (double& v : b) v = UnitIntervalOpen(engine());
    }
  }
  const std::vector<double> mu(3, 1.0 / 3);
  for (int x = 0; x < 3; ++x) {
    for (int u = 0; u < 2; ++u) {
      const double total = raw[x][0][u] + raw[x][1][u] + raw[x][2][u];
      const auto next = Row(model, 0, x, u, mu);
      for (int xn = 0; xn < 3; ++xn) {
        EXPECT_NEAR(next[xn], raw[x][xn][u] / total, 1e-15);
      }
    }
  }
}

TEST(RandomGameTest, SeedDeterminesGame) {
  const RandomMfgParams params{.num_states = 5, .num_actions = 3, .seed = 4};
  const MfgModel a = MakeRandom(params);
  const MfgModel b = MakeRandom(params);
  RandomMfgParams other = params;
  other.seed = 5;
  const MfgModel c = MakeRandom(other);
  const std::vector<double> mu(5, 0.2);
  bool differs = false;
  for (int t = 0; t < 10; ++t) {
    for (int x = 0; x < 5; ++x) {
      for (int u = 0; u < 3; ++u) {
        EXPECT_EQ(a.Reward(t, x, u, mu), b.Reward(t, x, u, mu));
        EXPECT_EQ(Row(a, t, x, u, mu), Row(b, t, x, u, mu));
        differs |= a.Reward(t, x, u, mu) != c.Reward(t, x, u, mu);
      }
    }
  }
  EXPECT_TRUE(differs);
}

TEST(RandomGameTest, CrowdAversionUsesFloor) {
  const MfgModel model =
      MakeRandom({.num_states = 2, .num_actions = 1, .horizon = 1, .eta = 2.0});
  const MfgModel plain =
      MakeRandom({.num_states = 2, .num_actions = 1, .horizon = 1, .eta = 0.0});
  const double base = plain.Reward(0, 0, 0, std::vector<double>{0.5, 0.5});
  EXPECT_NEAR(model.Reward(0, 0, 0, std::vector<double>{0.25, 0.75}),
              base - 2.0 * std::log(0.25), 1e-14);
  EXPECT_NEAR(model.Reward(0, 0, 0, std::vector<double>{0.0, 1.0}),
              base - 2.0 * std::log(1e-10), 1e-9);
}

std::string TinyDocument() {
  return R"({
    "name": "two-state",
    "num_states": 2, "num_actions": 2, "horizon": 2,
    "initial_mf": [0.5, 0.5],
    "transitions": [
      [[[1.0, 0.0], [0.3, 0.7]], [[0.5, 0.5], [0.0, 1.0]]],
      [[[0.2, 0.8], [0.6, 0.4]], [[0.9, 0.1], [0.4, 0.6]]]
    ],
    "rewards": [[[1.0, 2.0], [3.0, 4.0]], [[5.0, 6.0], [7.0, 8.0]]],
    "coupling": {"log_barrier": {"eta": 0.5}, "linear": {"matrix": [[1, 0], [0, -1]]}}
  })";
}

TEST(ParseGameTest, ReadsTablesAndCoupling) {
  const MfgModel model = ParseGame(TinyDocument());
  EXPECT_EQ(model.name(), "two-state");
  const std::vector<double> mu = {0.25, 0.75};
  EXPECT_EQ(Row(model, 1, 0, 1, mu), (std::vector<double>{0.6, 0.4}));
  EXPECT_NEAR(model.Reward(1, 1, 0, mu), 7.0 - 0.5 * std::log(0.75) - 0.75,
              1e-14);
  EXPECT_TRUE(ValidateModel(model, {mu}).ok());
}

TEST(ParseGameTest, TimeInvariantTransitions) {
  nlohmann::json doc = nlohmann::json::parse(TinyDocument());
  doc["transitions"] = "time-invariant";
  doc["transition_table"] = {{{0.1, 0.9}, {0.2, 0.8}}, {{0.3, 0.7}, {1, 0}}};
  const MfgModel model = ParseGame(doc.dump());
  const std::vector<double> mu = {0.5, 0.5};
  EXPECT_EQ(Row(model, 0, 1, 0, mu), Row(model, 1, 1, 0, mu));
  EXPECT_EQ(Row(model, 1, 0, 0, mu)[1], 0.9);
  // Depth detection: a single [x][u][x'] table is repeated over time.
  doc.erase("transition_table");
  doc["transitions"] = {{{0.1, 0.9}, {0.2, 0.8}}, {{0.3, 0.7}, {1, 0}}};
  const MfgModel detected = ParseGame(doc.dump());
  EXPECT_EQ(Row(detected, 1, 0, 0, mu)[1], 0.9);
}

TEST(ParseGameTest, UnnormalizedRowLoadsAndValidationReportsIt) {
  nlohmann::json doc = nlohmann::json::parse(TinyDocument());
  doc["transitions"][0][1][0] = {0.5, 0.4};
  const MfgModel model = ParseGame(doc.dump());
  const ValidationReport report = ValidateModel(model, {{0.5, 0.5}}, 1e-9);
  ASSERT_EQ(report.violations.size(), 1u);
  const Violation& v = report.violations[0];
  EXPECT_EQ(v.kind, Violation::Kind::kTransitionNotNormalized);
  EXPECT_EQ(v.t, 0);
  EXPECT_EQ(v.x, 1);
  EXPECT_EQ(v.u, 0);
  EXPECT_NEAR(v.value, 0.9, 1e-15);
}

TEST(ParseGameTest, MalformedDocumentsNameTheProblem) {
  auto message = [](const std::string& text) -> std::string {
    try {
      ParseGame(text, "game.json");
    } catch (const GameFormatError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message("").find("game.json"), std::string::npos);
  EXPECT_NE(message("[]").find("object"), std::string::npos);
  nlohmann::json doc = nlohmann::json::parse(TinyDocument());
  doc.erase("rewards");
  EXPECT_NE(message(doc.dump()).find("rewards"), std::string::npos);
  doc = nlohmann::json::parse(TinyDocument());
  doc["transitions"][1].erase(1);
  EXPECT_NE(message(doc.dump()).find("transitions"), std::string::npos);
  doc = nlohmann::json::parse(TinyDocument());
  doc["num_states"] = -2;
  EXPECT_NE(message(doc.dump()).find("num_states"), std::string::npos);
  doc = nlohmann::json::parse(TinyDocument());
  doc["transitions"] = "constant";
  EXPECT_NE(message(doc.dump()).find("time-invariant"), std::string::npos);
  EXPECT_THROW(LoadGame("/nonexistent/game.json"), GameFormatError);
}

}  // namespace
}  // namespace mfg
