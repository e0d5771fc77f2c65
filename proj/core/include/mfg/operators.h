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

#ifndef MFG_OPERATORS_H_
#define MFG_OPERATORS_H_

#include <span>
#include <vector>

#include "mfg/model.h"
#include "mfg/types.h"

// Fixed-point building blocks: the mean-field map, the three backward
// recursions, the policy maps and the objectives.
//
// All value recursions and objectives operate on whatever stage range the
// supplied MeanFieldFlow covers, [mf.first_time(), mf.last_time()]. A
// full-horizon flow gives the usual finite-horizon quantities; a windowed
// flow gives the receding-horizon ones. Every recursion terminates with
// Q = r at the last stage of the range.
namespace mfg {

// Last decision time of the window that starts at `t_start` and plans
// `horizon_rh` steps ahead: min(T-1, t_start + H).
int WindowLastTime(int horizon, int t_start, int horizon_rh);
inline int WindowLength(int horizon, int t_start, int horizon_rh) {
  return WindowLastTime(horizon, t_start, horizon_rh) - t_start + 1;
}

// mu_{t+1}(x') = sum_x mu_t(x) sum_u pi_t(u|x) p_t(x'|x,u,mu_t), started from
// the model's initial mean field. The policy must span the full horizon.
MeanFieldFlow MeanFieldForward(const MfgModel& model, const Policy& policy);

// Same recursion over {t_start, ..., min(T-1, t_start+H)} started from
// `mu_start`. The policy must cover exactly that window.
MeanFieldFlow MeanFieldForwardWindowed(const MfgModel& model,
                                       const Policy& policy, int t_start,
                                       std::span<const double> mu_start,
                                       int horizon_rh);

// Forward recursion over the policy's own stage range.
MeanFieldFlow MeanFieldForwardFrom(const MfgModel& model, const Policy& policy,
                                   std::span<const double> mu_start);

// Policy evaluation. The successor value at step t uses pi_{t+1}.
QFunction QPolicy(const MfgModel& model, const MeanFieldFlow& mf,
                  const Policy& policy);

// Optimal values with a hard max over successor actions.
QFunction QOptimal(const MfgModel& model, const MeanFieldFlow& mf);

// Smooth-maximum values: successor value alpha * log sum exp(Q / alpha).
QFunction QSoft(const MfgModel& model, const MeanFieldFlow& mf, double alpha);

// alpha * log(sum_i exp(v_i / alpha)), stabilized by shifting by max(v).
double LogSumExp(std::span<const double> values, double alpha);

// Gradient of LogSumExp with respect to `values`: softmax(values / alpha).
void SoftmaxInto(std::span<const double> values, double alpha,
                 std::span<double> out);
std::vector<double> LogSumExpGradient(std::span<const double> values,
                                      double alpha);

// Shannon entropy in nats with 0 log 0 = 0.
double Entropy(std::span<const double> distribution);

// Deterministic argmax policy; ties go to the lowest action index.
Policy GreedyPolicy(const QFunction& q);

// pi(u|x) proportional to exp(Q(x,u) / alpha).
Policy SoftmaxPolicy(const QFunction& q, double alpha);

// Expected reward of an agent following `deviating` while the population
// flow is frozen at `mf`. The agent starts from mf's first row.
double Objective(const MfgModel& model, const Policy& deviating,
                 const MeanFieldFlow& mf);

// Objective plus alpha times the expected entropy of `deviating` along the
// agent's own state distribution.
double ObjectiveRegularized(const MfgModel& model, const Policy& deviating,
                            const MeanFieldFlow& mf, double alpha);

// Receding-horizon objective over {t_start, ..., min(T-1, t_start+H)};
// alpha == 0 is the unregularized form. `deviating` and `mf` must cover
// exactly that window.
double ObjectiveWindowed(const MfgModel& model, const Policy& deviating,
                         const MeanFieldFlow& mf, int t_start, int horizon_rh,
                         double alpha);

}  // namespace mfg

#endif  // MFG_OPERATORS_H_
