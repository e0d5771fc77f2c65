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

#include "mfg/model.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace mfg {

MfgModel::MfgModel(std::string name, int num_states, int num_actions,
                   int horizon, std::vector<double> initial_mf,
                   TransitionFn transition, RewardFn reward)
    : name_(std::move(name)),
      num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      initial_mf_(std::move(initial_mf)),
      transition_(std::move(transition)),
      reward_(std::move(reward)) {
  if (num_states_ <= 0 || num_actions_ <= 0 || horizon_ <= 0) {
    throw DimensionError(
        "MfgModel: state, action and horizon counts must be "
        "positive");
  }
  if (static_cast<int>(initial_mf_.size()) != num_states_) {
    throw DimensionError("MfgModel: initial mean field has " +
                         std::to_string(initial_mf_.size()) +
                         " entries, expected " + std::to_string(num_states_));
  }
  if (!IsDistribution(initial_mf_)) {
    throw MfgError("MfgModel: initial mean field is not a distribution");
  }
  if (!transition_ || !reward_) {
    throw MfgError("MfgModel: missing transition or reward evaluator");
  }
}

StageTables::StageTables(const MfgModel& model, int t,
                         std::span<const double> mu)
    : num_states_(model.num_states()), num_actions_(model.num_actions()) {
  const std::size_t xs = num_states_;
  const std::size_t us = num_actions_;
  transition_.assign(xs * us * xs, 0.0);
  reward_.assign(xs * us, 0.0);
  for (int x = 0; x < num_states_; ++x) {
    for (int u = 0; u < num_actions_; ++u) {
      const std::size_t xu = static_cast<std::size_t>(x) * us + u;
      model.Transition(t, x, u, mu, {transition_.data() + xu * xs, xs});
      reward_[xu] = model.Reward(t, x, u, mu);
    }
  }
}

std::string Violation::Describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kTransitionNegative:
      out << "negative transition probability " << value;
      break;
    case Kind::kTransitionNotNormalized:
      out << "transition row sums to " << value;
      break;
    case Kind::kTransitionNonFinite:
      out << "non-finite transition probability";
      break;
    case Kind::kRewardNonFinite:
      out << "non-finite reward " << value;
      break;
  }
  out << " at probe " << probe << " (t=" << t << ", x=" << x << ", u=" << u
      << ")";
  return out.str();
}

ValidationReport ValidateModel(
    const MfgModel& model, const std::vector<std::vector<double>>& probe_mfs,
    double tolerance) {
  if (probe_mfs.empty()) {
    throw DimensionError("ValidateModel: at least one probe mean field needed");
  }
  ValidationReport report;
  const int xs = model.num_states();
  std::vector<double> next(xs);
  for (int probe = 0; probe < static_cast<int>(probe_mfs.size()); ++probe) {
    const std::vector<double>& mu = probe_mfs[probe];
    if (static_cast<int>(mu.size()) != xs) {
      throw DimensionError("ValidateModel: probe " + std::to_string(probe) +
                           " has the wrong number of states");
    }
    for (int t = 0; t < model.horizon(); ++t) {
      for (int x = 0; x < xs; ++x) {
        for (int u = 0; u < model.num_actions(); ++u) {
          std::fill(next.begin(), next.end(), 0.0);
          model.Transition(t, x, u, mu, next);
          double total = 0.0;
          bool finite = true;
          for (double p : next) {
            if (!std::isfinite(p)) {
              finite = false;
            } else if (p < 0.0) {
              report.violations.push_back(
                  {Violation::Kind::kTransitionNegative, probe, t, x, u, p});
            }
            total += p;
          }
          if (!finite) {
            report.violations.push_back(
                {Violation::Kind::kTransitionNonFinite, probe, t, x, u, total});
          } else if (std::abs(total - 1.0) > tolerance) {
            report.violations.push_back(
                {Violation::Kind::kTransitionNotNormalized, probe, t, x, u,
                 total});
          }
          const double r = model.Reward(t, x, u, mu);
          if (!std::isfinite(r)) {
            report.violations.push_back(
                {Violation::Kind::kRewardNonFinite, probe, t, x, u, r});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace mfg
