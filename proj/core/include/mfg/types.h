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

#ifndef MFG_TYPES_H_
#define MFG_TYPES_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mfg {

// Simplex tolerance for freshly constructed distributions.
inline constexpr double kSimplexTolerance = 1e-12;
// Simplex tolerance after propagating a distribution over the horizon.
inline constexpr double kPropagatedSimplexTolerance = 1e-10;

class MfgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public MfgError {
 public:
  using MfgError::MfgError;
};

// True when `row` is nonnegative and sums to one within `tolerance`.
bool IsDistribution(std::span<const double> row,
                    double tolerance = kSimplexTolerance);

// Rescales a nonnegative, not-all-zero row to sum to one. Throws MfgError
// if the row has a negative entry or zero total mass.
void NormalizeInPlace(std::span<double> row);

// Dense [step][state][action] table. Steps are local: step s stands for
// absolute decision time first_time() + s, so the same container serves
// full-horizon objects (first_time() == 0) and receding-horizon windows.
class StageActionTable {
 public:
  StageActionTable() = default;
  StageActionTable(int first_time, int num_steps, int num_states,
                   int num_actions, double fill = 0.0);

  int first_time() const { return first_time_; }
  int num_steps() const { return num_steps_; }
  int last_time() const { return first_time_ + num_steps_ - 1; }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

  // Indexed by local step.
  double& at(int step, int x, int u) { return data_[Index(step, x, u)]; }
  double at(int step, int x, int u) const { return data_[Index(step, x, u)]; }
  std::span<double> row(int step, int x) {
    return {data_.data() + Index(step, x, 0),
            static_cast<std::size_t>(num_actions_)};
  }
  std::span<const double> row(int step, int x) const {
    return {data_.data() + Index(step, x, 0),
            static_cast<std::size_t>(num_actions_)};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& mutable_data() { return data_; }

  bool SameShape(const StageActionTable& other) const;

  friend bool operator==(const StageActionTable&,
                         const StageActionTable&) = default;

 protected:
  std::size_t Index(int step, int x, int u) const {
    return (static_cast<std::size_t>(step) * num_states_ + x) * num_actions_ +
           u;
  }

 private:
  int first_time_ = 0;
  int num_steps_ = 0;
  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> data_;
};

// Time-indexed per-state action distributions pi_t(u|x).
class Policy : public StageActionTable {
 public:
  Policy() = default;
  Policy(int first_time, int num_steps, int num_states, int num_actions)
      : StageActionTable(first_time, num_steps, num_states, num_actions) {}

  static Policy Uniform(int first_time, int num_steps, int num_states,
                        int num_actions);

  // (step, state) of the first row off the simplex, if any.
  std::optional<std::pair<int, int>> FirstInvalidRow(
      double tolerance = kSimplexTolerance) const;
  bool IsValid(double tolerance = kSimplexTolerance) const {
    return !FirstInvalidRow(tolerance).has_value();
  }
};

// State-action values Q_t(x,u).
class QFunction : public StageActionTable {
 public:
  QFunction() = default;
  QFunction(int first_time, int num_steps, int num_states, int num_actions)
      : StageActionTable(first_time, num_steps, num_states, num_actions) {}

  bool AllFinite() const;
};

// Time-indexed state distributions mu_t.
class MeanFieldFlow {
 public:
  MeanFieldFlow() = default;
  MeanFieldFlow(int first_time, int num_steps, int num_states);

  int first_time() const { return first_time_; }
  int num_steps() const { return num_steps_; }
  int last_time() const { return first_time_ + num_steps_ - 1; }
  int num_states() const { return num_states_; }

  double& at(int step, int x) { return data_[Index(step, x)]; }
  double at(int step, int x) const { return data_[Index(step, x)]; }
  std::span<double> row(int step) {
    return {data_.data() + Index(step, 0),
            static_cast<std::size_t>(num_states_)};
  }
  std::span<const double> row(int step) const {
    return {data_.data() + Index(step, 0),
            static_cast<std::size_t>(num_states_)};
  }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const MeanFieldFlow&, const MeanFieldFlow&) = default;

 private:
  std::size_t Index(int step, int x) const {
    return static_cast<std::size_t>(step) * num_states_ + x;
  }

  int first_time_ = 0;
  int num_steps_ = 0;
  int num_states_ = 0;
  std::vector<double> data_;
};

// One windowed policy per start time. Member i starts at decision time i and
// covers {i, ..., min(T-1, i+H)}.
struct PolicyEnsemble {
  int horizon_rh = 0;
  std::vector<Policy> members;
};

struct TraceRow {
  int iteration = 0;
  double delta_qpire = 0.0;
  double delta_qstarre = 0.0;
  double delta_re = 0.0;
  double exploitability = 0.0;
  double reg_exploitability = 0.0;
  double wall_time_seconds = 0.0;
};

// Per-iteration metric records. Iteration numbers strictly increase.
class ConvergenceTrace {
 public:
  void Append(const TraceRow& row);
  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  const TraceRow& back() const { return rows_.back(); }

 private:
  std::vector<TraceRow> rows_;
};

}  // namespace mfg

#endif  // MFG_TYPES_H_
