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

#ifndef MFG_METRICS_H_
#define MFG_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfg/model.h"
#include "mfg/types.h"

namespace mfg {

enum class Concept { kNE, kQPiRE, kQStarRE, kRE };

std::string_view ConceptName(Concept c);  // "ne", "qpi_re", "qstar_re", "re"
std::optional<Concept> ParseConcept(std::string_view name);

// Clamped exploitability gaps below this value are logged as warnings.
inline constexpr double kNegativeExploitabilityWarning = -1e-6;

// max_t max_x sum_u |a - b|.
double PolicyDistance(const Policy& a, const Policy& b);

// The policy a concept maps `policy` to under the population flow `mf`:
// softmax of Q^pi / Q* / Q~, or the greedy best response for kNE. `mf` must
// cover the policy's stages.
Policy ConceptResponse(const MfgModel& model, const Policy& policy,
                       const MeanFieldFlow& mf, double alpha,
                       Concept solution_concept);

// max_pi' J(pi', pi) - J(pi, pi), clamped at zero.
double Exploitability(const MfgModel& model, const Policy& policy);

// max_pi' J_alpha^RE(pi', pi) - J_alpha^RE(pi, pi), clamped at zero.
double ExploitabilityRegularized(const MfgModel& model, const Policy& policy,
                                 double alpha);

// Distance of `policy` to the fixed point of the concept's map; for kNE the
// exploitability.
double DeltaEquilibrium(const MfgModel& model, const Policy& policy,
                        double alpha, Concept solution_concept);

// Windowed forms. The window is the policy's own stage range and the
// population starts from `mu_start` at policy.first_time(). alpha == 0 gives
// the unregularized exploitability.
double WindowedExploitability(const MfgModel& model, const Policy& policy,
                              std::span<const double> mu_start, double alpha);
double WindowedDeltaEquilibrium(const MfgModel& model, const Policy& policy,
                                std::span<const double> mu_start, double alpha,
                                Concept solution_concept);

// Number of subgames solved for a receding horizon H: one when the first
// window already reaches T-1, else T-H+1 (the last window's later stages
// fill the tail of the implemented policy).
int SubgameCount(int horizon, int horizon_rh);

// Checks that the ensemble has the member layout SubgameCount implies and
// returns each member's start distribution: the model's initial mean field
// for member 0, and member t-1's induced flow at time t otherwise.
std::vector<std::vector<double>> ChainedStartMfs(
    const MfgModel& model, const PolicyEnsemble& ensemble);

// Sum over members of the windowed exploitability under chained starts.
double RhExploitability(const MfgModel& model, const PolicyEnsemble& ensemble,
                        double alpha);

}  // namespace mfg

#endif  // MFG_METRICS_H_
