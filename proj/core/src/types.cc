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

#include "mfg/types.h"

#include <cmath>
#include <string>

namespace mfg {

bool IsDistribution(std::span<const double> row, double tolerance) {
  double total = 0.0;
  for (double p : row) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    total += p;
  }
  return std::abs(total - 1.0) <= tolerance;
}

void NormalizeInPlace(std::span<double> row) {
  double total = 0.0;
  for (double p : row) {
    if (!(p >= 0.0)) throw MfgError("NormalizeInPlace: negative entry");
    total += p;
  }
  if (!(total > 0.0)) throw MfgError("NormalizeInPlace: zero total mass");
  for (double& p : row) p /= total;
}

StageActionTable::StageActionTable(int first_time, int num_steps,
                                   int num_states, int num_actions, double fill)
    : first_time_(first_time),
      num_steps_(num_steps),
      num_states_(num_states),
      num_actions_(num_actions) {
  if (first_time < 0 || num_steps <= 0 || num_states <= 0 || num_actions <= 0) {
    throw DimensionError("StageActionTable: nonpositive dimension");
  }
  data_.assign(static_cast<std::size_t>(num_steps) * num_states * num_actions,
               fill);
}

bool StageActionTable::SameShape(const StageActionTable& other) const {
  return first_time_ == other.first_time_ && num_steps_ == other.num_steps_ &&
         num_states_ == other.num_states_ && num_actions_ == other.num_actions_;
}

Policy Policy::Uniform(int first_time, int num_steps, int num_states,
                       int num_actions) {
  Policy policy(first_time, num_steps, num_states, num_actions);
  for (double& p : policy.mutable_data()) p = 1.0 / num_actions;
  return policy;
}

std::optional<std::pair<int, int>> Policy::FirstInvalidRow(
    double tolerance) const {
  for (int s = 0; s < num_steps(); ++s) {
    for (int x = 0; x < num_states(); ++x) {
      if (!IsDistribution(row(s, x), tolerance)) return std::pair{s, x};
    }
  }
  return std::nullopt;
}

bool QFunction::AllFinite() const {
  for (double v : data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

MeanFieldFlow::MeanFieldFlow(int first_time, int num_steps, int num_states)
    : first_time_(first_time), num_steps_(num_steps), num_states_(num_states) {
  if (first_time < 0 || num_steps <= 0 || num_states <= 0) {
    throw DimensionError("MeanFieldFlow: nonpositive dimension");
  }
  data_.assign(static_cast<std::size_t>(num_steps) * num_states, 0.0);
}

void ConvergenceTrace::Append(const TraceRow& row) {
  if (!rows_.empty() && row.iteration <= rows_.back().iteration) {
    throw MfgError("ConvergenceTrace: iteration " +
                   std::to_string(row.iteration) +
                   " does not increase on the previous row");
  }
  if (rows_.empty() && row.iteration < 0) {
    throw MfgError("ConvergenceTrace: negative iteration");
  }
  rows_.push_back(row);
}

}  // namespace mfg
