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

#ifndef MFG_ALGORITHMS_H_
#define MFG_ALGORITHMS_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mfg/metrics.h"
#include "mfg/model.h"
#include "mfg/types.h"

namespace mfg {

// Raised for invalid solver or experiment settings. field() names the
// offending setting.
class ConfigError : public MfgError {
 public:
  ConfigError(std::string field, const std::string& message)
      : MfgError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// How fictitious play weighs a new best response against the running
// average. kGeometric uses the constant weight 1 - beta; kUniform uses
// 1 / (k + 2) at step k, i.e. the plain average of all iterates.
enum class Averaging { kGeometric, kUniform };

struct SolverConfig {
  Concept solution_concept = Concept::kRE;
  double alpha = 1.0;  // temperature, 1 / lambda
  double beta = 0.95;
  int max_iterations = 1000;
  // Early stop once the concept's distance (exploitability for kNE) is at
  // or below this value.
  double tolerance = 0.0;
  std::optional<int> horizon_rh;
  // Full-horizon starting policy; uniform when unset.
  std::optional<Policy> initial_policy;
  // Full metric rows are recorded every `trace_every` iterations and at the
  // final iterate.
  int trace_every = 1;
  Averaging averaging = Averaging::kGeometric;
  // Worker threads for RhParallel. Results do not depend on this value.
  int num_threads = 1;

  // Throws ConfigError.
  void Validate(const MfgModel& model) const;
};

struct SolverResult {
  // For receding-horizon solvers this is the implemented (diagonal) policy.
  Policy final_policy;
  ConvergenceTrace trace;
  bool converged = false;
  int iterations_used = 0;

  // Receding-horizon solvers only.
  std::optional<PolicyEnsemble> ensemble;
  std::optional<Policy> implemented_policy;
  // Iterations each subgame needed to reach the tolerance (or the budget).
  std::vector<int> subgame_iterations;
  // Windowed metrics of each subgame, one row per recorded iteration.
  std::vector<ConvergenceTrace> subgame_traces;
};

// Called with every iterate, starting from the initial policy at 0.
using IterateObserver = std::function<void(int iteration, const Policy&)>;
// Called with the ensemble after every global iteration (RhParallel) or
// every inner iteration of the subgame being solved (RhSequential; members
// not yet solved hold their initial policies).
using EnsembleObserver =
    std::function<void(int iteration, const PolicyEnsemble&)>;

// Metric row of a (possibly windowed) policy whose population starts from
// `mu_start` at policy.first_time(). Regularized columns are NaN when
// alpha == 0.
TraceRow EvaluateTraceRow(const MfgModel& model, const Policy& policy,
                          std::span<const double> mu_start, double alpha);

// Generalized fixed-point iteration:
//   pi^{k+1} = Gamma_Pi(Gamma_Q(Gamma_M(pi^k), pi^k)).
SolverResult Gfpi(const MfgModel& model, const SolverConfig& config,
                  const IterateObserver& observer = {});

// Generalized fictitious play: best response to the averaged mean field,
// occupancy-weighted policy averaging.
SolverResult Gfp(const MfgModel& model, const SolverConfig& config,
                 const IterateObserver& observer = {});

// Receding-horizon fictitious play solving the subgames in ascending start
// time; each subgame starts from its predecessor's induced mean field one
// step in. Stops a subgame at the tolerance or after max_iterations.
SolverResult RhSequential(const MfgModel& model, const SolverConfig& config,
                          const EnsembleObserver& observer = {});

// Receding-horizon fictitious play advancing every subgame by one step per
// global iteration. Subgame t reads its predecessor's state from the previous
// global iteration only, so subgames may be stepped concurrently.
SolverResult RhParallel(const MfgModel& model, const SolverConfig& config,
                        const EnsembleObserver& observer = {});

// Implemented policy of an ensemble: row t is member t's first stage; times
// after the last member's start use that member's later stages.
Policy DiagonalPolicy(const PolicyEnsemble& ensemble);

}  // namespace mfg

#endif  // MFG_ALGORITHMS_H_
