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

#include "mfg/algorithms.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "mfg/operators.h"

namespace mfg {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Policy InitialPolicy(const MfgModel& model, const SolverConfig& config) {
  if (config.initial_policy.has_value()) return *config.initial_policy;
  return Policy::Uniform(0, model.horizon(), model.num_states(),
                         model.num_actions());
}

Policy SlicePolicy(const Policy& full, int first_time, int num_steps) {
  Policy out(first_time, num_steps, full.num_states(), full.num_actions());
  const int offset = first_time - full.first_time();
  for (int s = 0; s < num_steps; ++s) {
    for (int x = 0; x < full.num_states(); ++x) {
      const std::span<const double> src = full.row(offset + s, x);
      std::copy(src.begin(), src.end(), out.row(s, x).begin());
    }
  }
  return out;
}

bool ShouldRecord(int iteration, int trace_every) {
  return iteration % trace_every == 0;
}

// One fictitious-play process on the stages of its policy, with the
// population starting from `mu_start`. Holds the occupancy-weighted policy
// mass, the averaged mean field and the normalized average policy.
class FictitiousPlay {
 public:
  FictitiousPlay(const MfgModel& model, const SolverConfig& config,
                 Policy initial, std::vector<double> mu_start)
      : model_(model),
        config_(config),
        mu_start_(std::move(mu_start)),
        policy_(std::move(initial)) {
    avg_mf_ = MeanFieldForwardFrom(model_, policy_, mu_start_);
    mass_ = policy_;
    for (int s = 0; s < mass_.num_steps(); ++s) {
      for (int x = 0; x < mass_.num_states(); ++x) {
        for (double& p : mass_.row(s, x)) p *= avg_mf_.at(s, x);
      }
    }
  }

  const Policy& policy() const { return policy_; }
  const std::vector<double>& mu_start() const { return mu_start_; }
  const Policy& policy_mass() const { return mass_; }
  const MeanFieldFlow& averaged_mf() const { return avg_mf_; }

  // Replaces the population's start distribution; later steps propagate
  // from it.
  void SetStart(std::span<const double> mu) {
    mu_start_.assign(mu.begin(), mu.end());
    std::copy(mu.begin(), mu.end(), avg_mf_.row(0).begin());
  }

  void Step() {
    const Policy response = ConceptResponse(
        model_, policy_, avg_mf_, config_.alpha, config_.solution_concept);
    const MeanFieldFlow induced =
        MeanFieldForwardFrom(model_, response, mu_start_);
    const double w_new = config_.averaging == Averaging::kGeometric
                             ? 1.0 - config_.beta
                             : 1.0 / (steps_taken_ + 2.0);
    const double w_old = 1.0 - w_new;
    for (int s = 0; s < mass_.num_steps(); ++s) {
      for (int x = 0; x < mass_.num_states(); ++x) {
        const double occupancy = induced.at(s, x);
        const std::span<double> m = mass_.row(s, x);
        const std::span<const double> r = response.row(s, x);
        for (int u = 0; u < mass_.num_actions(); ++u) {
          m[u] = w_old * m[u] + w_new * occupancy * r[u];
        }
        avg_mf_.at(s, x) = w_old * avg_mf_.at(s, x) + w_new * occupancy;
        NormalizeOrFallback(m, r, policy_.row(s, x));
      }
    }
    ++steps_taken_;
  }

 private:
  // States never visited by any iterate carry zero mass; their action does
  // not affect the flow or the objective, so they take the latest response.
  static void NormalizeOrFallback(std::span<const double> mass,
                                  std::span<const double> fallback,
                                  std::span<double> out) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (total > 0.0) {
      for (std::size_t u = 0; u < mass.size(); ++u) out[u] = mass[u] / total;
    } else {
      std::copy(fallback.begin(), fallback.end(), out.begin());
    }
  }

  const MfgModel& model_;
  const SolverConfig& config_;
  std::vector<double> mu_start_;
  Policy policy_;
  Policy mass_;
  MeanFieldFlow avg_mf_;
  int steps_taken_ = 0;
};

// Records the trace row for `iteration` when `record` is set; returns the
// concept distance either way.
double RecordIteration(const MfgModel& model, const SolverConfig& config,
                       const Policy& policy, std::span<const double> mu_start,
                       int iteration, Clock::time_point start,
                       ConvergenceTrace& trace, bool record) {
  if (!record) {
    return WindowedDeltaEquilibrium(model, policy, mu_start, config.alpha,
                                    config.solution_concept);
  }
  TraceRow row = EvaluateTraceRow(model, policy, mu_start, config.alpha);
  row.iteration = iteration;
  row.wall_time_seconds = SecondsSince(start);
  trace.Append(row);
  switch (config.solution_concept) {
    case Concept::kNE:
      return row.exploitability;
    case Concept::kQPiRE:
      return row.delta_qpire;
    case Concept::kQStarRE:
      return row.delta_qstarre;
    case Concept::kRE:
      return row.delta_re;
  }
  return std::numeric_limits<double>::infinity();
}

template <typename StepFn>
SolverResult RunFullHorizon(const MfgModel& model, const SolverConfig& config,
                            const IterateObserver& observer, Policy& policy,
                            StepFn step) {
  const Clock::time_point start = Clock::now();
  SolverResult result;
  const std::span<const double> mu0 = model.initial_mf();
  for (int k = 0;; ++k) {
    if (observer) observer(k, policy);
    const bool last = k == config.max_iterations;
    const bool due = last || ShouldRecord(k, config.trace_every);
    const double delta = RecordIteration(model, config, policy, mu0, k, start,
                                         result.trace, due);
    const bool done = delta <= config.tolerance;
    if (done && !due) {
      RecordIteration(model, config, policy, mu0, k, start, result.trace, true);
    }
    if (done || last) {
      result.converged = done;
      result.iterations_used = k;
      break;
    }
    step();
  }
  result.final_policy = policy;
  return result;
}

// Advances a single subgame until its windowed distance reaches the
// tolerance or the budget runs out. Returns the iterations used.
int SolveSubgame(const MfgModel& model, const SolverConfig& config,
                 FictitiousPlay& play, int subgame, int& global_iteration,
                 Clock::time_point start, ConvergenceTrace& subgame_trace,
                 ConvergenceTrace& trace, bool& converged,
                 PolicyEnsemble& ensemble, const EnsembleObserver& observer) {
  for (int k = 0;; ++k) {
    ensemble.members[subgame] = play.policy();
    if (observer) observer(global_iteration, ensemble);
    const bool last = k == config.max_iterations;
    const bool due = last || ShouldRecord(k, config.trace_every);
    const double delta =
        RecordIteration(model, config, play.policy(), play.mu_start(), k, start,
                        subgame_trace, due);
    const bool done = delta <= config.tolerance;
    if (done && !due) {
      RecordIteration(model, config, play.policy(), play.mu_start(), k, start,
                      subgame_trace, true);
    }
    if (due || done) {
      TraceRow row = subgame_trace.back();
      row.iteration = global_iteration;
      trace.Append(row);
    }
    if (done || last) {
      converged = done;
      return k;
    }
    play.Step();
    ++global_iteration;
  }
}

void CheckRecedingHorizon(const MfgModel& model, const SolverConfig& config) {
  if (!config.horizon_rh.has_value()) {
    throw ConfigError("horizon_rh", "receding-horizon solvers need a horizon");
  }
  (void)SubgameCount(model.horizon(), *config.horizon_rh);
}

}  // namespace

void SolverConfig::Validate(const MfgModel& model) const {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("beta",
                      "must lie in (0, 1), got " + std::to_string(beta));
  }
  if (solution_concept != Concept::kNE && !(alpha > 0.0)) {
    throw ConfigError("alpha", "must be positive for regularized concepts");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha", "must be finite and nonnegative");
  }
  if (max_iterations < 0) {
    throw ConfigError("iterations", "must be nonnegative");
  }
  if (!(tolerance >= 0.0)) {
    throw ConfigError("tolerance", "must be nonnegative");
  }
  if (trace_every < 1) {
    throw ConfigError("trace_every", "must be at least 1");
  }
  if (num_threads < 1) {
    throw ConfigError("num_threads", "must be at least 1");
  }
  if (horizon_rh.has_value() && *horizon_rh < 1) {
    throw ConfigError("horizon_rh", "must be at least 1");
  }
  if (initial_policy.has_value()) {
    const Policy& p = *initial_policy;
    if (p.first_time() != 0 || p.num_steps() != model.horizon() ||
        p.num_states() != model.num_states() ||
        p.num_actions() != model.num_actions()) {
      throw ConfigError("initial_policy", "must span the full horizon");
    }
    if (!p.IsValid()) {
      throw ConfigError("initial_policy", "has a row off the simplex");
    }
  }
}

TraceRow EvaluateTraceRow(const MfgModel& model, const Policy& policy,
                          std::span<const double> mu_start, double alpha) {
  TraceRow row;
  row.exploitability = WindowedExploitability(model, policy, mu_start, 0.0);
  if (alpha > 0.0) {
    row.delta_qpire = WindowedDeltaEquilibrium(model, policy, mu_start, alpha,
                                               Concept::kQPiRE);
    row.delta_qstarre = WindowedDeltaEquilibrium(model, policy, mu_start, alpha,
                                                 Concept::kQStarRE);
    row.delta_re =
        WindowedDeltaEquilibrium(model, policy, mu_start, alpha, Concept::kRE);
    row.reg_exploitability =
        WindowedExploitability(model, policy, mu_start, alpha);
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.delta_qpire = row.delta_qstarre = row.delta_re = nan;
    row.reg_exploitability = nan;
  }
  return row;
}

SolverResult Gfpi(const MfgModel& model, const SolverConfig& config,
                  const IterateObserver& observer) {
  config.Validate(model);
  Policy policy = InitialPolicy(model, config);
  return RunFullHorizon(model, config, observer, policy, [&] {
    const MeanFieldFlow mf = MeanFieldForward(model, policy);
    policy = ConceptResponse(model, policy, mf, config.alpha,
                             config.solution_concept);
  });
}

SolverResult Gfp(const MfgModel& model, const SolverConfig& config,
                 const IterateObserver& observer) {
  config.Validate(model);
  FictitiousPlay play(model, config, InitialPolicy(model, config),
                      {model.initial_mf().begin(), model.initial_mf().end()});
  Policy policy = play.policy();
  return RunFullHorizon(model, config, observer, policy, [&] {
    play.Step();
    policy = play.policy();
  });
}

SolverResult RhSequential(const MfgModel& model, const SolverConfig& config,
                          const EnsembleObserver& observer) {
  config.Validate(model);
  CheckRecedingHorizon(model, config);
  const Clock::time_point start = Clock::now();
  const int horizon = model.horizon();
  const int horizon_rh = *config.horizon_rh;
  const int count = SubgameCount(horizon, horizon_rh);
  const Policy initial = InitialPolicy(model, config);

  SolverResult result;
  PolicyEnsemble ensemble{horizon_rh, {}};
  for (int i = 0; i < count; ++i) {
    ensemble.members.push_back(
        SlicePolicy(initial, i, WindowLength(horizon, i, horizon_rh)));
  }
  result.subgame_traces.resize(count);
  result.converged = true;
  int global_iteration = 0;
  std::vector<double> mu_start(model.initial_mf().begin(),
                               model.initial_mf().end());
  for (int i = 0; i < count; ++i) {
    if (i > 0) {
      const MeanFieldFlow prev =
          MeanFieldForwardFrom(model, ensemble.members[i - 1], mu_start);
      mu_start.assign(prev.row(1).begin(), prev.row(1).end());
    }
    FictitiousPlay play(model, config, ensemble.members[i], mu_start);
    bool converged = false;
    const int used = SolveSubgame(model, config, play, i, global_iteration,
                                  start, result.subgame_traces[i], result.trace,
                                  converged, ensemble, observer);
    ensemble.members[i] = play.policy();
    result.subgame_iterations.push_back(used);
    result.converged = result.converged && converged;
    ++global_iteration;
  }
  result.iterations_used = global_iteration - count;
  result.implemented_policy = DiagonalPolicy(ensemble);
  result.final_policy = *result.implemented_policy;
  result.ensemble = std::move(ensemble);
  return result;
}

SolverResult RhParallel(const MfgModel& model, const SolverConfig& config,
                        const EnsembleObserver& observer) {
  config.Validate(model);
  CheckRecedingHorizon(model, config);
  const Clock::time_point start = Clock::now();
  const int horizon = model.horizon();
  const int horizon_rh = *config.horizon_rh;
  const int count = SubgameCount(horizon, horizon_rh);
  const Policy initial = InitialPolicy(model, config);
  const MeanFieldFlow initial_flow = MeanFieldForward(model, initial);

  std::vector<FictitiousPlay> plays;
  plays.reserve(count);
  for (int i = 0; i < count; ++i) {
    plays.emplace_back(
        model, config,
        SlicePolicy(initial, i, WindowLength(horizon, i, horizon_rh)),
        std::vector<double>(initial_flow.row(i).begin(),
                            initial_flow.row(i).end()));
  }

  SolverResult result;
  result.subgame_traces.resize(count);
  result.subgame_iterations.assign(count, 0);
  PolicyEnsemble ensemble{horizon_rh, std::vector<Policy>(count)};
  const int threads = std::min(config.num_threads, count);

  for (int k = 0;; ++k) {
    for (int i = 0; i < count; ++i) ensemble.members[i] = plays[i].policy();
    if (observer) observer(k, ensemble);

    // Convergence is judged on the ensemble as a whole, with every member
    // started from its predecessor's current induced mean field.
    const std::vector<std::vector<double>> chained =
        ChainedStartMfs(model, ensemble);
    const bool last = k == config.max_iterations;
    const bool record = ShouldRecord(k, config.trace_every);
    std::vector<double> deltas(count);
    for (int i = 0; i < count; ++i) {
      deltas[i] =
          WindowedDeltaEquilibrium(model, ensemble.members[i], chained[i],
                                   config.alpha, config.solution_concept);
      if (deltas[i] > config.tolerance) result.subgame_iterations[i] = k + 1;
    }
    const bool done = std::all_of(deltas.begin(), deltas.end(), [&](double d) {
      return d <= config.tolerance;
    });
    if (record || done || last) {
      TraceRow total;
      total.iteration = k;
      for (int i = 0; i < count; ++i) {
        TraceRow row = EvaluateTraceRow(model, ensemble.members[i], chained[i],
                                        config.alpha);
        row.iteration = k;
        row.wall_time_seconds = SecondsSince(start);
        result.subgame_traces[i].Append(row);
        total.delta_qpire = std::max(total.delta_qpire, row.delta_qpire);
        total.delta_qstarre = std::max(total.delta_qstarre, row.delta_qstarre);
        total.delta_re = std::max(total.delta_re, row.delta_re);
        total.exploitability += row.exploitability;
        total.reg_exploitability += row.reg_exploitability;
      }
      if (config.alpha == 0.0) {
        total.delta_qpire = total.delta_qstarre = total.delta_re =
            total.reg_exploitability = std::numeric_limits<double>::quiet_NaN();
      }
      total.wall_time_seconds = SecondsSince(start);
      result.trace.Append(total);
    }
    if (done || last) {
      result.converged = done;
      result.iterations_used = k;
      break;
    }

    // Every subgame reads its predecessor's state from this iteration before
    // any subgame advances.
    std::vector<std::vector<double>> next_starts(count);
    for (int i = 1; i < count; ++i) {
      const MeanFieldFlow prev = MeanFieldForwardFrom(
          model, plays[i - 1].policy(), plays[i - 1].mu_start());
      next_starts[i].assign(prev.row(1).begin(), prev.row(1).end());
    }
    auto advance = [&](int i) {
      if (i > 0) plays[i].SetStart(next_starts[i]);
      plays[i].Step();
    };
    if (threads <= 1) {
      for (int i = 0; i < count; ++i) advance(i);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(threads);
      for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          for (int i = w; i < count; i += threads) advance(i);
        });
      }
    }
  }

  result.implemented_policy = DiagonalPolicy(ensemble);
  result.final_policy = *result.implemented_policy;
  result.ensemble = std::move(ensemble);
  return result;
}

Policy DiagonalPolicy(const PolicyEnsemble& ensemble) {
  if (ensemble.members.empty()) {
    throw MfgError("DiagonalPolicy: empty ensemble");
  }
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    if (ensemble.members[i].first_time() != static_cast<int>(i)) {
      throw MfgError("DiagonalPolicy: time " + std::to_string(i) +
                     " is not covered by a member starting there");
    }
  }
  const Policy& tail = ensemble.members.back();
  const int horizon = tail.last_time() + 1;
  const int last_start = tail.first_time();
  Policy out(0, horizon, tail.num_states(), tail.num_actions());
  for (int t = 0; t < horizon; ++t) {
    const Policy& source =
        t <= last_start ? ensemble.members[t] : ensemble.members.back();
    const int step = t - source.first_time();
    if (step >= source.num_steps()) {
      throw MfgError("DiagonalPolicy: time " + std::to_string(t) +
                     " is not covered");
    }
    for (int x = 0; x < out.num_states(); ++x) {
      const std::span<const double> src = source.row(step, x);
      std::copy(src.begin(), src.end(), out.row(t, x).begin());
    }
  }
  return out;
}

}  // namespace mfg
