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

#include "mfg/metrics.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "mfg/operators.h"

namespace mfg {
namespace {

double ClampGap(double gap, const char* what) {
  if (gap < kNegativeExploitabilityWarning) {
    std::clog << "warning: " << what << " evaluated to " << gap
              << "; clamping to 0\n";
  }
  return std::max(gap, 0.0);
}

void CheckFullHorizon(const MfgModel& model, const Policy& policy,
                      const char* where) {
  if (policy.first_time() != 0 || policy.num_steps() != model.horizon()) {
    throw DimensionError(std::string(where) +
                         ": policy must span the full horizon");
  }
}

}  // namespace

std::string_view ConceptName(Concept c) {
  switch (c) {
    case Concept::kNE:
      return "ne";
    case Concept::kQPiRE:
      return "qpi_re";
    case Concept::kQStarRE:
      return "qstar_re";
    case Concept::kRE:
      return "re";
  }
  return "unknown";
}

std::optional<Concept> ParseConcept(std::string_view name) {
  for (Concept c :
       {Concept::kNE, Concept::kQPiRE, Concept::kQStarRE, Concept::kRE}) {
    if (ConceptName(c) == name) return c;
  }
  return std::nullopt;
}

double PolicyDistance(const Policy& a, const Policy& b) {
  if (!a.SameShape(b)) {
    throw DimensionError("PolicyDistance: policies have different shapes");
  }
  double distance = 0.0;
  for (int s = 0; s < a.num_steps(); ++s) {
    for (int x = 0; x < a.num_states(); ++x) {
      const std::span<const double> ra = a.row(s, x);
      const std::span<const double> rb = b.row(s, x);
      double l1 = 0.0;
      for (int u = 0; u < a.num_actions(); ++u) l1 += std::abs(ra[u] - rb[u]);
      distance = std::max(distance, l1);
    }
  }
  return distance;
}

Policy ConceptResponse(const MfgModel& model, const Policy& policy,
                       const MeanFieldFlow& mf, double alpha,
                       Concept solution_concept) {
  switch (solution_concept) {
    case Concept::kNE:
      return GreedyPolicy(QOptimal(model, mf));
    case Concept::kQPiRE:
      return SoftmaxPolicy(QPolicy(model, mf, policy), alpha);
    case Concept::kQStarRE:
      return SoftmaxPolicy(QOptimal(model, mf), alpha);
    case Concept::kRE:
      return SoftmaxPolicy(QSoft(model, mf, alpha), alpha);
  }
  throw MfgError("ConceptResponse: invalid concept");
}

double WindowedExploitability(const MfgModel& model, const Policy& policy,
                              std::span<const double> mu_start, double alpha) {
  if (!(alpha >= 0.0)) {
    throw MfgError("WindowedExploitability: alpha must be nonnegative");
  }
  const MeanFieldFlow mf = MeanFieldForwardFrom(model, policy, mu_start);
  double best = 0.0;
  double value = 0.0;
  if (alpha == 0.0) {
    const QFunction q = QOptimal(model, mf);
    for (int x = 0; x < model.num_states(); ++x) {
      if (mu_start[x] == 0.0) continue;
      const std::span<const double> row = q.row(0, x);
      best += mu_start[x] * *std::max_element(row.begin(), row.end());
    }
    value = Objective(model, policy, mf);
  } else {
    const QFunction q = QSoft(model, mf, alpha);
    for (int x = 0; x < model.num_states(); ++x) {
      if (mu_start[x] == 0.0) continue;
      best += mu_start[x] * LogSumExp(q.row(0, x), alpha);
    }
    value = ObjectiveRegularized(model, policy, mf, alpha);
  }
  return ClampGap(best - value, "exploitability");
}

double Exploitability(const MfgModel& model, const Policy& policy) {
  CheckFullHorizon(model, policy, "Exploitability");
  return WindowedExploitability(model, policy, model.initial_mf(), 0.0);
}

double ExploitabilityRegularized(const MfgModel& model, const Policy& policy,
                                 double alpha) {
  if (!(alpha > 0.0)) {
    throw MfgError("ExploitabilityRegularized: alpha must be positive");
  }
  CheckFullHorizon(model, policy, "ExploitabilityRegularized");
  return WindowedExploitability(model, policy, model.initial_mf(), alpha);
}

double WindowedDeltaEquilibrium(const MfgModel& model, const Policy& policy,
                                std::span<const double> mu_start, double alpha,
                                Concept solution_concept) {
  if (solution_concept == Concept::kNE) {
    return WindowedExploitability(model, policy, mu_start, 0.0);
  }
  if (!(alpha > 0.0)) {
    throw MfgError("DeltaEquilibrium: alpha must be positive");
  }
  const MeanFieldFlow mf = MeanFieldForwardFrom(model, policy, mu_start);
  return PolicyDistance(
      policy, ConceptResponse(model, policy, mf, alpha, solution_concept));
}

double DeltaEquilibrium(const MfgModel& model, const Policy& policy,
                        double alpha, Concept solution_concept) {
  CheckFullHorizon(model, policy, "DeltaEquilibrium");
  return WindowedDeltaEquilibrium(model, policy, model.initial_mf(), alpha,
                                  solution_concept);
}

int SubgameCount(int horizon, int horizon_rh) {
  if (horizon <= 0) throw DimensionError("SubgameCount: empty horizon");
  if (horizon_rh < 1) {
    throw MfgError("receding horizon must be at least 1, got " +
                   std::to_string(horizon_rh));
  }
  if (horizon_rh >= horizon - 1) return 1;
  return horizon - horizon_rh + 1;
}

std::vector<std::vector<double>> ChainedStartMfs(
    const MfgModel& model, const PolicyEnsemble& ensemble) {
  const int horizon = model.horizon();
  const int count = SubgameCount(horizon, ensemble.horizon_rh);
  if (static_cast<int>(ensemble.members.size()) != count) {
    throw MfgError("ensemble has " + std::to_string(ensemble.members.size()) +
                   " members, expected " + std::to_string(count));
  }
  std::vector<std::vector<double>> starts;
  starts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Policy& member = ensemble.members[i];
    if (member.first_time() != i ||
        member.num_steps() != WindowLength(horizon, i, ensemble.horizon_rh) ||
        member.num_states() != model.num_states() ||
        member.num_actions() != model.num_actions()) {
      throw MfgError("ensemble member " + std::to_string(i) +
                     " does not cover its window");
    }
    if (i == 0) {
      starts.emplace_back(model.initial_mf().begin(), model.initial_mf().end());
    } else {
      const MeanFieldFlow prev =
          MeanFieldForwardFrom(model, ensemble.members[i - 1], starts[i - 1]);
      starts.emplace_back(prev.row(1).begin(), prev.row(1).end());
    }
  }
  return starts;
}

double RhExploitability(const MfgModel& model, const PolicyEnsemble& ensemble,
                        double alpha) {
  const std::vector<std::vector<double>> starts =
      ChainedStartMfs(model, ensemble);
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    total +=
        WindowedExploitability(model, ensemble.members[i], starts[i], alpha);
  }
  return total;
}

}  // namespace mfg
