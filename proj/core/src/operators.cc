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

#include <algorithm>
#include <cmath>
#include <string>

namespace mfg {
namespace {

void CheckPositiveAlpha(double alpha, const char* where) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw MfgError(std::string(where) + ": alpha must be positive and finite");
  }
}

void CheckFlowFitsModel(const MfgModel& model, const MeanFieldFlow& mf,
                        const char* where) {
  if (mf.num_states() != model.num_states() ||
      mf.last_time() >= model.horizon()) {
    throw DimensionError(std::string(where) +
                         ": mean field flow does not fit the model");
  }
}

void CheckPolicyMatchesFlow(const MfgModel& model, const Policy& policy,
                            const MeanFieldFlow& mf, const char* where) {
  CheckFlowFitsModel(model, mf, where);
  if (policy.first_time() != mf.first_time() ||
      policy.num_steps() != mf.num_steps() ||
      policy.num_states() != model.num_states() ||
      policy.num_actions() != model.num_actions()) {
    throw DimensionError(std::string(where) +
                         ": policy and mean field cover different stages");
  }
}

enum class Backup { kPolicy, kMax, kSoft };

// Shared backward recursion. `policy` is only read for Backup::kPolicy.
QFunction BackwardRecursion(const MfgModel& model, const MeanFieldFlow& mf,
                            Backup backup, const Policy* policy, double alpha) {
  const int xs = model.num_states();
  const int us = model.num_actions();
  const int steps = mf.num_steps();
  QFunction q(mf.first_time(), steps, xs, us);
  std::vector<double> next_value(xs, 0.0);
  for (int s = steps - 1; s >= 0; --s) {
    const StageTables stage(model, mf.first_time() + s, mf.row(s));
    const bool terminal = s == steps - 1;
    for (int x = 0; x < xs; ++x) {
      for (int u = 0; u < us; ++u) {
        double value = stage.reward(x, u);
        if (!terminal) {
          const std::span<const double> p = stage.transition(x, u);
          for (int xn = 0; xn < xs; ++xn) value += p[xn] * next_value[xn];
        }
        q.at(s, x, u) = value;
      }
    }
    if (s == 0) break;
    for (int x = 0; x < xs; ++x) {
      const std::span<const double> row = q.row(s, x);
      switch (backup) {
        case Backup::kPolicy: {
          const std::span<const double> pi = policy->row(s, x);
          double v = 0.0;
          for (int u = 0; u < us; ++u) v += pi[u] * row[u];
          next_value[x] = v;
          break;
        }
        case Backup::kMax:
          next_value[x] = *std::max_element(row.begin(), row.end());
          break;
        case Backup::kSoft:
          next_value[x] = LogSumExp(row, alpha);
          break;
      }
    }
  }
  return q;
}

// Stage sum of (reward + alpha * entropy) along the deviating agent's own
// state distribution under the frozen population flow.
double EvaluateDeviation(const MfgModel& model, const Policy& deviating,
                         const MeanFieldFlow& mf, double alpha) {
  const int xs = model.num_states();
  const int us = model.num_actions();
  std::vector<double> rho(mf.row(0).begin(), mf.row(0).end());
  std::vector<double> next(xs);
  double total = 0.0;
  for (int s = 0; s < mf.num_steps(); ++s) {
    const StageTables stage(model, mf.first_time() + s, mf.row(s));
    std::fill(next.begin(), next.end(), 0.0);
    const bool last = s == mf.num_steps() - 1;
    for (int x = 0; x < xs; ++x) {
      if (rho[x] == 0.0) continue;
      const std::span<const double> pi = deviating.row(s, x);
      double stage_value = 0.0;
      for (int u = 0; u < us; ++u) {
        if (pi[u] == 0.0) continue;
        stage_value += pi[u] * stage.reward(x, u);
        if (!last) {
          const std::span<const double> p = stage.transition(x, u);
          const double w = rho[x] * pi[u];
          for (int xn = 0; xn < xs; ++xn) next[xn] += w * p[xn];
        }
      }
      if (alpha > 0.0) stage_value += alpha * Entropy(pi);
      total += rho[x] * stage_value;
    }
    rho.swap(next);
  }
  return total;
}

void ForwardInto(const MfgModel& model, const Policy& policy,
                 MeanFieldFlow& flow) {
  const int xs = model.num_states();
  const int us = model.num_actions();
  for (int s = 0; s + 1 < flow.num_steps(); ++s) {
    const int t = flow.first_time() + s;
    const std::span<const double> mu = flow.row(s);
    const std::span<double> next = flow.row(s + 1);
    std::vector<double> p(xs);
    for (int x = 0; x < xs; ++x) {
      if (mu[x] == 0.0) continue;
      const std::span<const double> pi = policy.row(s, x);
      for (int u = 0; u < us; ++u) {
        const double w = mu[x] * pi[u];
        if (w == 0.0) continue;
        std::fill(p.begin(), p.end(), 0.0);
        model.Transition(t, x, u, mu, p);
        for (int xn = 0; xn < xs; ++xn) next[xn] += w * p[xn];
      }
    }
    NormalizeInPlace(next);
  }
}

}  // namespace

int WindowLastTime(int horizon, int t_start, int horizon_rh) {
  if (t_start < 0 || t_start >= horizon || horizon_rh < 0) {
    throw DimensionError("window start " + std::to_string(t_start) +
                         " with lookahead " + std::to_string(horizon_rh) +
                         " is outside the horizon " + std::to_string(horizon));
  }
  return std::min(horizon - 1, t_start + horizon_rh);
}

MeanFieldFlow MeanFieldForward(const MfgModel& model, const Policy& policy) {
  if (policy.first_time() != 0 || policy.num_steps() != model.horizon()) {
    throw DimensionError("MeanFieldForward: policy must span the full horizon");
  }
  return MeanFieldForwardFrom(model, policy, model.initial_mf());
}

MeanFieldFlow MeanFieldForwardWindowed(const MfgModel& model,
                                       const Policy& policy, int t_start,
                                       std::span<const double> mu_start,
                                       int horizon_rh) {
  const int length = WindowLength(model.horizon(), t_start, horizon_rh);
  if (policy.first_time() != t_start || policy.num_steps() != length) {
    throw DimensionError(
        "MeanFieldForwardWindowed: policy does not cover the "
        "window");
  }
  return MeanFieldForwardFrom(model, policy, mu_start);
}

MeanFieldFlow MeanFieldForwardFrom(const MfgModel& model, const Policy& policy,
                                   std::span<const double> mu_start) {
  if (policy.num_states() != model.num_states() ||
      policy.num_actions() != model.num_actions() ||
      policy.last_time() >= model.horizon()) {
    throw DimensionError("MeanFieldForward: policy does not fit the model");
  }
  if (static_cast<int>(mu_start.size()) != model.num_states()) {
    throw DimensionError(
        "MeanFieldForward: start distribution has the wrong "
        "size");
  }
  if (!IsDistribution(mu_start, kPropagatedSimplexTolerance)) {
    throw MfgError("MeanFieldForward: start distribution is off the simplex");
  }
  MeanFieldFlow flow(policy.first_time(), policy.num_steps(),
                     model.num_states());
  std::copy(mu_start.begin(), mu_start.end(), flow.row(0).begin());
  ForwardInto(model, policy, flow);
  return flow;
}

QFunction QPolicy(const MfgModel& model, const MeanFieldFlow& mf,
                  const Policy& policy) {
  CheckPolicyMatchesFlow(model, policy, mf, "QPolicy");
  return BackwardRecursion(model, mf, Backup::kPolicy, &policy, 0.0);
}

QFunction QOptimal(const MfgModel& model, const MeanFieldFlow& mf) {
  CheckFlowFitsModel(model, mf, "QOptimal");
  return BackwardRecursion(model, mf, Backup::kMax, nullptr, 0.0);
}

QFunction QSoft(const MfgModel& model, const MeanFieldFlow& mf, double alpha) {
  CheckPositiveAlpha(alpha, "QSoft");
  CheckFlowFitsModel(model, mf, "QSoft");
  return BackwardRecursion(model, mf, Backup::kSoft, nullptr, alpha);
}

double LogSumExp(std::span<const double> values, double alpha) {
  if (values.empty()) throw DimensionError("LogSumExp: empty vector");
  CheckPositiveAlpha(alpha, "LogSumExp");
  const double shift = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp((v - shift) / alpha);
  return shift + alpha * std::log(sum);
}

void SoftmaxInto(std::span<const double> values, double alpha,
                 std::span<double> out) {
  if (values.empty()) throw DimensionError("Softmax: empty vector");
  if (out.size() != values.size()) {
    throw DimensionError("Softmax: output has the wrong size");
  }
  CheckPositiveAlpha(alpha, "Softmax");
  const double shift = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::exp((values[i] - shift) / alpha);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
}

std::vector<double> LogSumExpGradient(std::span<const double> values,
                                      double alpha) {
  std::vector<double> out(values.size());
  SoftmaxInto(values, alpha, out);
  return out;
}

double Entropy(std::span<const double> distribution) {
  double h = 0.0;
  for (double p : distribution) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

Policy GreedyPolicy(const QFunction& q) {
  Policy policy(q.first_time(), q.num_steps(), q.num_states(), q.num_actions());
  for (int s = 0; s < q.num_steps(); ++s) {
    for (int x = 0; x < q.num_states(); ++x) {
      const std::span<const double> row = q.row(s, x);
      // max_element returns the first maximum, i.e. the lowest index on ties.
      const auto best = std::max_element(row.begin(), row.end());
      policy.at(s, x, static_cast<int>(best - row.begin())) = 1.0;
    }
  }
  return policy;
}

Policy SoftmaxPolicy(const QFunction& q, double alpha) {
  CheckPositiveAlpha(alpha, "SoftmaxPolicy");
  Policy policy(q.first_time(), q.num_steps(), q.num_states(), q.num_actions());
  for (int s = 0; s < q.num_steps(); ++s) {
    for (int x = 0; x < q.num_states(); ++x) {
      SoftmaxInto(q.row(s, x), alpha, policy.row(s, x));
    }
  }
  return policy;
}

double Objective(const MfgModel& model, const Policy& deviating,
                 const MeanFieldFlow& mf) {
  CheckPolicyMatchesFlow(model, deviating, mf, "Objective");
  return EvaluateDeviation(model, deviating, mf, 0.0);
}

double ObjectiveRegularized(const MfgModel& model, const Policy& deviating,
                            const MeanFieldFlow& mf, double alpha) {
  CheckPositiveAlpha(alpha, "ObjectiveRegularized");
  CheckPolicyMatchesFlow(model, deviating, mf, "ObjectiveRegularized");
  return EvaluateDeviation(model, deviating, mf, alpha);
}

double ObjectiveWindowed(const MfgModel& model, const Policy& deviating,
                         const MeanFieldFlow& mf, int t_start, int horizon_rh,
                         double alpha) {
  const int length = WindowLength(model.horizon(), t_start, horizon_rh);
  if (mf.first_time() != t_start || mf.num_steps() != length) {
    throw DimensionError(
        "ObjectiveWindowed: mean field does not cover the "
        "window");
  }
  if (!(alpha >= 0.0)) {
    throw MfgError("ObjectiveWindowed: alpha must be nonnegative");
  }
  CheckPolicyMatchesFlow(model, deviating, mf, "ObjectiveWindowed");
  return EvaluateDeviation(model, deviating, mf, alpha);
}

}  // namespace mfg
