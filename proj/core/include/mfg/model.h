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

#ifndef MFG_MODEL_H_
#define MFG_MODEL_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfg/types.h"

namespace mfg {

// Writes p_t(.|x,u,mu) into `next` (length num_states).
using TransitionFn = std::function<void(
    int t, int x, int u, std::span<const double> mu, std::span<double> next)>;
// r_t(x,u,mu).
using RewardFn =
    std::function<double(int t, int x, int u, std::span<const double> mu)>;

// A finite-horizon, finite-state mean field game. Decision times are
// {0, ..., horizon-1}. Evaluators must be pure: they may be called
// concurrently and must return the same value for the same arguments.
class MfgModel {
 public:
  MfgModel(std::string name, int num_states, int num_actions, int horizon,
           std::vector<double> initial_mf, TransitionFn transition,
           RewardFn reward);

  const std::string& name() const { return name_; }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int horizon() const { return horizon_; }
  std::span<const double> initial_mf() const { return initial_mf_; }

  void Transition(int t, int x, int u, std::span<const double> mu,
                  std::span<double> next) const {
    transition_(t, x, u, mu, next);
  }
  double Reward(int t, int x, int u, std::span<const double> mu) const {
    return reward_(t, x, u, mu);
  }

 private:
  std::string name_;
  int num_states_;
  int num_actions_;
  int horizon_;
  std::vector<double> initial_mf_;
  TransitionFn transition_;
  RewardFn reward_;
};

// Transition and reward tables of one decision time under a frozen mean
// field. transition(x, u) is the next-state row.
class StageTables {
 public:
  StageTables(const MfgModel& model, int t, std::span<const double> mu);

  std::span<const double> transition(int x, int u) const {
    return {transition_.data() +
                (static_cast<std::size_t>(x) * num_actions_ + u) * num_states_,
            static_cast<std::size_t>(num_states_)};
  }
  double reward(int x, int u) const {
    return reward_[static_cast<std::size_t>(x) * num_actions_ + u];
  }

 private:
  int num_states_;
  int num_actions_;
  std::vector<double> transition_;
  std::vector<double> reward_;
};

struct Violation {
  enum class Kind {
    kTransitionNegative,
    kTransitionNotNormalized,
    kTransitionNonFinite,
    kRewardNonFinite,
  };
  Kind kind;
  int probe = 0;
  int t = 0;
  int x = 0;
  int u = 0;
  double value = 0.0;  // the offending entry, row sum or reward

  std::string Describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Evaluates every (t, x, u) at each probe mean field and reports transition
// rows off the simplex and non-finite rewards. Never throws on violations;
// throws DimensionError if there are no probes or a probe has the wrong size.
ValidationReport ValidateModel(
    const MfgModel& model, const std::vector<std::vector<double>>& probe_mfs,
    double tolerance = kSimplexTolerance);

}  // namespace mfg

#endif  // MFG_MODEL_H_
