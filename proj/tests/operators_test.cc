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

#include "mfg/operators.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "mfg/games.h"
#include "test_util.h"

namespace mfg {
namespace {

using ::mfg::testing::BruteForceMeanField;
using ::mfg::testing::BruteForceObjective;
using ::mfg::testing::BruteForceQOptimal;
using ::mfg::testing::BruteForceQPolicy;
using ::mfg::testing::MakeTinyGame;
using ::mfg::testing::RandomPolicy;

constexpr double kOracleTolerance = 1e-12;

TEST(WindowTest, LastTimeClipsAtHorizon) {
  EXPECT_EQ(WindowLastTime(10, 0, 3), 3);
  EXPECT_EQ(WindowLastTime(10, 8, 3), 9);
  EXPECT_EQ(WindowLength(10, 8, 3), 2);
  EXPECT_THROW(WindowLastTime(10, 10, 3), MfgError);
  EXPECT_THROW(WindowLastTime(10, 0, -1), MfgError);
}

TEST(MeanFieldForwardTest, MatchesPathEnumeration) {
  const MfgModel model = MakeTinyGame(0.5);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Policy policy = RandomPolicy(model, rng);
    const MeanFieldFlow mf = MeanFieldForward(model, policy);
    const MeanFieldFlow oracle = BruteForceMeanField(model, policy);
    for (int t = 0; t < model.horizon(); ++t) {
      for (int x = 0; x < model.num_states(); ++x) {
        EXPECT_NEAR(mf.at(t, x), oracle.at(t, x), kOracleTolerance);
      }
    }
  }
}

TEST(MeanFieldForwardTest, RowsStayOnSimplex) {
  const MfgModel model = MakeRps();
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const MeanFieldFlow mf = MeanFieldForward(model, RandomPolicy(model, rng));
    for (int t = 0; t < model.horizon(); ++t) {
      EXPECT_TRUE(IsDistribution(mf.row(t), kPropagatedSimplexTolerance));
    }
  }
}

TEST(MeanFieldForwardTest, RejectsPartialPolicy) {
  const MfgModel model = MakeSis();
  EXPECT_THROW(MeanFieldForward(model, Policy::Uniform(0, 3, 2, 2)),
               DimensionError);
}

TEST(MeanFieldForwardTest, WindowedMatchesFullSlice) {
  const MfgModel model = MakeSis();
  std::mt19937_64 rng(3);
  const Policy full = RandomPolicy(model, rng);
  const MeanFieldFlow mf = MeanFieldForward(model, full);
  const int t0 = 7;
  const int h = 4;
  Policy window(t0, h + 1, 2, 2);
  for (int s = 0; s <= h; ++s) {
    for (int x = 0; x < 2; ++x) {
      for (int u = 0; u < 2; ++u) window.at(s, x, u) = full.at(t0 + s, x, u);
    }
  }
  const MeanFieldFlow w =
      MeanFieldForwardWindowed(model, window, t0, mf.row(t0), h);
  ASSERT_EQ(w.first_time(), t0);
  for (int s = 0; s <= h; ++s) {
    for (int x = 0; x < 2; ++x) {
      EXPECT_NEAR(w.at(s, x), mf.at(t0 + s, x), 1e-14);
    }
  }
}

TEST(QFunctionTest, PolicyValuesMatchEnumeration) {
  const MfgModel model = MakeTinyGame();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Policy policy = RandomPolicy(model, rng);
    const MeanFieldFlow mf = MeanFieldForward(model, policy);
    const QFunction q = QPolicy(model, mf, policy);
    for (int t = 0; t < 2; ++t) {
      for (int x = 0; x < 2; ++x) {
        for (int u = 0; u < 2; ++u) {
          EXPECT_NEAR(q.at(t, x, u),
                      BruteForceQPolicy(model, policy, mf, t, x, u),
                      kOracleTolerance);
        }
      }
    }
  }
}

TEST(QFunctionTest, OptimalValuesMatchEnumeration) {
  const MfgModel model = MakeTinyGame();
  std::mt19937_64 rng(5);
  const MeanFieldFlow mf = MeanFieldForward(model, RandomPolicy(model, rng));
  const QFunction q = QOptimal(model, mf);
  for (int t = 0; t < 2; ++t) {
    for (int x = 0; x < 2; ++x) {
      for (int u = 0; u < 2; ++u) {
        EXPECT_NEAR(q.at(t, x, u), BruteForceQOptimal(model, mf, t, x, u),
                    kOracleTolerance);
      }
    }
  }
}

TEST(QFunctionTest, LastStageEqualsReward) {
  const MfgModel model = MakeRps();
  const Policy uniform = Policy::Uniform(0, model.horizon(), 4, 3);
  const MeanFieldFlow mf = MeanFieldForward(model, uniform);
  const int last = model.horizon() - 1;
  const QFunction qp = QPolicy(model, mf, uniform);
  const QFunction qo = QOptimal(model, mf);
  const QFunction qs = QSoft(model, mf, 0.5);
  for (int x = 0; x < 4; ++x) {
    for (int u = 0; u < 3; ++u) {
      const double r = model.Reward(last, x, u, mf.row(last));
      EXPECT_EQ(qp.at(last, x, u), r);
      EXPECT_EQ(qo.at(last, x, u), r);
      EXPECT_EQ(qs.at(last, x, u), r);
    }
  }
}

TEST(QFunctionTest, PolicyValuesBoundedByOptimal) {
  std::mt19937_64 rng(6);
  for (const MfgModel& model : {MakeSis(), MakeRps(), MakeTinyGame(1.0)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Policy policy = RandomPolicy(model, rng);
      const MeanFieldFlow mf = MeanFieldForward(model, policy);
      const QFunction qp = QPolicy(model, mf, policy);
      const QFunction qo = QOptimal(model, mf);
      for (std::size_t i = 0; i < qp.data().size(); ++i) {
        EXPECT_LE(qp.data()[i], qo.data()[i] + 1e-12);
      }
    }
  }
}

TEST(QFunctionTest, SoftValuesApproachOptimalAtLowTemperature) {
  const MfgModel model = MakeSis();
  const MeanFieldFlow mf =
      MeanFieldForward(model, Policy::Uniform(0, model.horizon(), 2, 2));
  const QFunction qo = QOptimal(model, mf);
  const QFunction qs = QSoft(model, mf, 1e-4);
  // Each successor adds at most alpha * log |U|.
  const double bound = model.horizon() * 1e-4 * std::log(2.0) + 1e-12;
  for (std::size_t i = 0; i < qo.data().size(); ++i) {
    EXPECT_GE(qs.data()[i], qo.data()[i] - 1e-12);
    EXPECT_LE(qs.data()[i], qo.data()[i] + bound);
  }
  EXPECT_THROW(QSoft(model, mf, 0.0), MfgError);
}

TEST(LogSumExpTest, StableForLargeInputs) {
  const std::vector<double> v = {1000.0, 999.0, -1e300};
  const double expected = 1000.0 + std::log(1.0 + std::exp(-1.0));
  EXPECT_NEAR(LogSumExp(v, 1.0), expected, 1e-12);
  const std::vector<double> g = LogSumExpGradient(v, 1.0);
  EXPECT_NEAR(g[0] + g[1] + g[2], 1.0, 1e-15);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_TRUE(
      std::isfinite(LogSumExp(std::vector<double>{-1e308, -1e308}, 1e-3)));
}

TEST(LogSumExpTest, EntropyIdentityOnRandomVectors) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    for (double alpha : {0.1, 1.0, 10.0}) {
      std::vector<double> v(size(rng));
      for (double& e : v) e = entry(rng);
      const std::vector<double> grad = LogSumExpGradient(v, alpha);
      double inner = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) inner += grad[i] * v[i];
      const double gap = LogSumExp(v, alpha) - inner;
      EXPECT_GE(gap, -1e-12);
      EXPECT_LE(gap, alpha * std::log(static_cast<double>(v.size())) + 1e-12);
      EXPECT_NEAR(gap, alpha * Entropy(grad), 1e-9);
    }
  }
}

TEST(EntropyTest, ZeroProbabilitiesContributeNothing) {
  EXPECT_EQ(Entropy(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(Entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-15);
}

TEST(PolicyMapTest, GreedyBreaksTiesTowardLowestAction) {
  QFunction q(0, 1, 2, 3);
  q.at(0, 0, 0) = 1.0;
  q.at(0, 0, 1) = 2.0;
  q.at(0, 0, 2) = 2.0;
  const Policy p = GreedyPolicy(q);
  EXPECT_EQ(p.at(0, 0, 1), 1.0);
  EXPECT_EQ(p.at(0, 0, 2), 0.0);
  EXPECT_EQ(p.at(0, 1, 0), 1.0);  // all-zero row ties everywhere
}

TEST(PolicyMapTest, SoftmaxLimits) {
  QFunction q(0, 1, 1, 3);
  q.at(0, 0, 0) = 0.0;
  q.at(0, 0, 1) = 1.0;
  q.at(0, 0, 2) = -2.0;
  const Policy hot = SoftmaxPolicy(q, 1e8);
  for (int u = 0; u < 3; ++u) EXPECT_NEAR(hot.at(0, 0, u), 1.0 / 3.0, 1e-7);
  const Policy cold = SoftmaxPolicy(q, 1e-3);
  EXPECT_NEAR(cold.at(0, 0, 1), 1.0, 1e-12);
  const Policy mid = SoftmaxPolicy(q, 1.0);
  EXPECT_NEAR(mid.at(0, 0, 1) / mid.at(0, 0, 0), std::exp(1.0), 1e-12);
  EXPECT_TRUE(mid.IsValid());
}

TEST(ObjectiveTest, MatchesPathEnumeration) {
  for (double coupling : {0.0, 0.8}) {
    const MfgModel model = MakeTinyGame(coupling);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const Policy population = RandomPolicy(model, rng);
      const Policy deviating = RandomPolicy(model, rng);
      const MeanFieldFlow mf = MeanFieldForward(model, population);
      EXPECT_NEAR(Objective(model, deviating, mf),
                  BruteForceObjective(model, deviating, mf), kOracleTolerance);
      EXPECT_NEAR(ObjectiveRegularized(model, deviating, mf, 0.7),
                  BruteForceObjective(model, deviating, mf, 0.7),
                  kOracleTolerance);
    }
  }
}

TEST(ObjectiveTest, EqualsInitialExpectationOfPolicyValues) {
  const MfgModel model = MakeSis();
  std::mt19937_64 rng(9);
  const Policy policy = RandomPolicy(model, rng);
  const MeanFieldFlow mf = MeanFieldForward(model, policy);
  const QFunction q = QPolicy(model, mf, policy);
  double expected = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int u = 0; u < 2; ++u) {
      expected += mf.at(0, x) * policy.at(0, x, u) * q.at(0, x, u);
    }
  }
  EXPECT_NEAR(Objective(model, policy, mf), expected, 1e-10);
}

TEST(ObjectiveTest, WindowedMatchesRestrictedEnumeration) {
  const MfgModel model = MakeSis({.horizon = 6});
  std::mt19937_64 rng(10);
  const Policy full = RandomPolicy(model, rng);
  const MeanFieldFlow mf = MeanFieldForward(model, full);
  const int t0 = 2;
  const int h = 2;
  const Policy window = RandomPolicy(model, rng, t0, h + 1);
  const MeanFieldFlow w =
      MeanFieldForwardWindowed(model, window, t0, mf.row(t0), h);
  EXPECT_NEAR(ObjectiveWindowed(model, window, w, t0, h, 0.0),
              BruteForceObjective(model, window, w), 1e-12);
  EXPECT_NEAR(ObjectiveWindowed(model, window, w, t0, h, 0.3),
              BruteForceObjective(model, window, w, 0.3), 1e-12);
}

}  // namespace
}  // namespace mfg
