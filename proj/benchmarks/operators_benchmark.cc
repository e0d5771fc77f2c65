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

#include <benchmark/benchmark.h>

#include "mfg/algorithms.h"
#include "mfg/games.h"
#include "mfg/operators.h"

namespace mfg {
namespace {

MfgModel BenchmarkGame(const benchmark::State& state) {
  return MakeRandom({.num_states = static_cast<int>(state.range(0)),
                     .num_actions = 10,
                     .horizon = 10});
}

void BM_MeanFieldForward(benchmark::State& state) {
  const MfgModel model = BenchmarkGame(state);
  const Policy policy = Policy::Uniform(0, 10, model.num_states(), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MeanFieldForward(model, policy));
  }
}
BENCHMARK(BM_MeanFieldForward)->Arg(20)->Arg(100);

void BM_QSoft(benchmark::State& state) {
  const MfgModel model = BenchmarkGame(state);
  const MeanFieldFlow mf =
      MeanFieldForward(model, Policy::Uniform(0, 10, model.num_states(), 10));
  for (auto _ : state) {
    benchmark::DoNotOptimize(QSoft(model, mf, 1.0));
  }
}
BENCHMARK(BM_QSoft)->Arg(20)->Arg(100);

void BM_GfpIteration(benchmark::State& state) {
  const MfgModel model = BenchmarkGame(state);
  SolverConfig config;
  config.max_iterations = 1;
  config.trace_every = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Gfp(model, config));
  }
}
BENCHMARK(BM_GfpIteration)->Arg(20)->Arg(100);

}  // namespace
}  // namespace mfg

BENCHMARK_MAIN();
