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

// Small hand-built games and exhaustive-enumeration oracles for tests.

#ifndef MFG_TESTS_TEST_UTIL_H_
#define MFG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "mfg/model.h"
#include "mfg/types.h"

namespace mfg::testing {

// Two states, two actions, two decision times, no mean-field dependence.
// p[t][x][u][x'] and r[t][x][u].
inline constexpr double kTinyTransition[2][2][2][2] = {
    {{{0.9, 0.1}, {0.2, 0.8}}, {{0.6, 0.4}, {0.05, 0.95}}},
    {{{0.7, 0.3}, {0.4, 0.6}}, {{0.25, 0.75}, {0.5, 0.5}}}};
inline constexpr double kTinyReward[2][2][2] = {{{1.0, 0.3}, {-0.5, 0.7}},
                                                {{0.2, 1.1}, {0.9, -0.4}}};

// `coupling` adds coupling * mu(x) to every reward, which makes the game
// mean-field dependent while keeping the dynamics fixed.
inline MfgModel MakeTinyGame(double coupling = 0.0) {
  auto transition = [](int t, int x, int u, std::span<const double>,
                       std::span<double> next) {
    next[0] = kTinyTransition[t][x][u][0];
    next[1] = kTinyTransition[t][x][u][1];
  };
  auto reward = [coupling](int t, int x, int u, std::span<const double> mu) {
    return kTinyReward[t][x][u] + coupling * mu[x];
  };
  return MfgModel("tiny", 2, 2, 2, {0.3, 0.7}, transition, reward);
}

// Visits every state-action path of the game played by `agent` from
// `start` at time `first_time` while the population flow is `mf`
// (mf.row(s) is time first_time + s). `visit` gets the path probability and
// the summed reward, plus the summed entropy bonus alpha * -log pi.
inline void EnumeratePaths(
    const MfgModel& model, const Policy& agent, const MeanFieldFlow& mf,
    std::span<const double> start, double alpha,
    const std::function<void(double prob, double reward)>& visit) {
  const int xs = model.num_states();
  const int us = model.num_actions();
  const int steps = agent.num_steps();
  std::function<void(int, int, double, double)> walk =
      [&](int s, int x, double prob, double total) {
        const int t = agent.first_time() + s;
        for (int u = 0; u < us; ++u) {
          const double pu = agent.at(s, x, u);
          if (pu == 0.0) continue;
          const double gained = model.Reward(t, x, u, mf.row(s)) -
                                (alpha > 0.0 ? alpha * std::log(pu) : 0.0);
          if (s + 1 == steps) {
            visit(prob * pu, total + gained);
            continue;
          }
          std::vector<double> next(xs);
          model.Transition(t, x, u, mf.row(s), next);
          for (int xn = 0; xn < xs; ++xn) {
            if (next[xn] == 0.0) continue;
            walk(s + 1, xn, prob * pu * next[xn], total + gained);
          }
        }
      };
  for (int x = 0; x < xs; ++x) {
    if (start[x] > 0.0) walk(0, x, start[x], 0.0);
  }
}

// Expected (optionally entropy-regularized) return by path enumeration.
inline double BruteForceObjective(const MfgModel& model, const Policy& agent,
                                  const MeanFieldFlow& mf, double alpha = 0.0) {
  double value = 0.0;
  EnumeratePaths(model, agent, mf, mf.row(0), alpha,
                 [&](double prob, double reward) { value += prob * reward; });
  return value;
}

// Population flow by path enumeration: mu_t(x) is the total probability of
// the paths in x at t.
inline MeanFieldFlow BruteForceMeanField(const MfgModel& model,
                                         const Policy& policy) {
  const int xs = model.num_states();
  const int us = model.num_actions();
  MeanFieldFlow mf(0, model.horizon(), xs);
  for (int x = 0; x < xs; ++x) mf.at(0, x) = model.initial_mf()[x];
  // Paths are enumerated from scratch for every t so that each row depends
  // only on complete path probabilities.
  for (int t = 1; t < model.horizon(); ++t) {
    std::function<void(int, int, double)> walk = [&](int s, int x,
                                                     double prob) {
      if (s == t) {
        mf.at(t, x) += prob;
        return;
      }
      for (int u = 0; u < us; ++u) {
        std::vector<double> next(xs);
        model.Transition(s, x, u, mf.row(s), next);
        for (int xn = 0; xn < xs; ++xn) {
          walk(s + 1, xn, prob * policy.at(s, x, u) * next[xn]);
        }
      }
    };
    for (int x = 0; x < xs; ++x) walk(0, x, model.initial_mf()[x]);
  }
  return mf;
}

// Calls `visit` with every deterministic policy over `steps` stages starting
// at `first_time`.
inline void ForEachDeterministicPolicy(
    int first_time, int steps, int num_states, int num_actions,
    const std::function<void(const Policy&)>& visit) {
  const int rows = steps * num_states;
  std::vector<int> choice(rows, 0);
  while (true) {
    Policy p(first_time, steps, num_states, num_actions);
    for (int r = 0; r < rows; ++r)
      p.at(r / num_states, r % num_states, choice[r]) = 1.0;
    visit(p);
    int r = 0;
    while (r < rows && ++choice[r] == num_actions) choice[r++] = 0;
    if (r == rows) return;
  }
}

// Q^pi_t(x,u) by enumerating every continuation path from (t, x, u).
inline double BruteForceQPolicy(const MfgModel& model, const Policy& policy,
                                const MeanFieldFlow& mf, int t, int x, int u) {
  Policy agent = policy;
  for (int a = 0; a < model.num_actions(); ++a) agent.at(t, x, a) = a == u;
  // Restrict to paths starting at (t, x): a window policy from t onward.
  Policy tail(t, model.horizon() - t, model.num_states(), model.num_actions());
  for (int s = 0; s < tail.num_steps(); ++s) {
    for (int y = 0; y < model.num_states(); ++y) {
      for (int a = 0; a < model.num_actions(); ++a) {
        tail.at(s, y, a) = agent.at(t + s, y, a);
      }
    }
  }
  MeanFieldFlow window(t, model.horizon() - t, model.num_states());
  for (int s = 0; s < window.num_steps(); ++s) {
    for (int y = 0; y < model.num_states(); ++y) {
      window.at(s, y) = mf.at(t + s, y);
    }
  }
  std::vector<double> start(model.num_states(), 0.0);
  start[x] = 1.0;
  double value = 0.0;
  EnumeratePaths(model, tail, window, start, 0.0,
                 [&](double prob, double reward) { value += prob * reward; });
  return value;
}

// Q*_t(x,u): best deterministic continuation after playing u at (t, x).
inline double BruteForceQOptimal(const MfgModel& model, const MeanFieldFlow& mf,
                                 int t, int x, int u) {
  double best = -std::numeric_limits<double>::infinity();
  ForEachDeterministicPolicy(
      0, model.horizon(), model.num_states(), model.num_actions(),
      [&](const Policy& p) {
        best = std::max(best, BruteForceQPolicy(model, p, mf, t, x, u));
      });
  return best;
}

// Best deterministic deviation gain against the flow the policy induces.
inline double BruteForceExploitability(const MfgModel& model,
                                       const Policy& policy) {
  const MeanFieldFlow mf = BruteForceMeanField(model, policy);
  double best = -std::numeric_limits<double>::infinity();
  ForEachDeterministicPolicy(0, model.horizon(), model.num_states(),
                             model.num_actions(), [&](const Policy& p) {
                               best = std::max(
                                   best, BruteForceObjective(model, p, mf));
                             });
  return best - BruteForceObjective(model, policy, mf);
}

// A full-horizon policy with rows drawn uniformly from the simplex.
inline Policy RandomPolicy(const MfgModel& model, std::mt19937_64& rng,
                           int first_time = 0, int steps = -1) {
  if (steps < 0) steps = model.horizon() - first_time;
  std::exponential_distribution<double> draw(1.0);
  Policy p(first_time, steps, model.num_states(), model.num_actions());
  for (int s = 0; s < steps; ++s) {
    for (int x = 0; x < model.num_states(); ++x) {
      double total = 0.0;
      for (double& v : p.row(s, x)) total += (v = draw(rng));
      for (double& v : p.row(s, x)) v /= total;
    }
  }
  return p;
}

}  // namespace mfg::testing

#endif  // MFG_TESTS_TEST_UTIL_H_
