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

#ifndef MFG_TOOLS_EXPERIMENTS_H_
#define MFG_TOOLS_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mfg/algorithms.h"
#include "mfg/games.h"
#include "mfg/metrics.h"
#include "mfg/model.h"

namespace mfg {

enum class Algorithm { kGfpi, kGfp, kRhSequential, kRhParallel };

std::string_view AlgorithmName(Algorithm algorithm);  // "gfpi", "gfp", ...
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

std::string_view AveragingName(Averaging averaging);  // "geometric", "uniform"
std::optional<Averaging> ParseAveraging(std::string_view name);

struct ExperimentConfig {
  // "sis", "rps", "random" or "file:<path>".
  std::string game = "sis";
  // Overrides the built-in game's horizon.
  std::optional<int> horizon;
  // Random game parameters.
  int num_states = 100;
  int num_actions = 10;
  double eta = 1.0;
  double mf_floor = 1e-10;
  std::uint64_t seed = 0;

  Algorithm algorithm = Algorithm::kGfp;
  Concept solution_concept = Concept::kRE;
  double alpha = 1.0;
  double beta = 0.95;
  int iterations = 1000;
  double tolerance = 0.0;
  std::optional<int> horizon_rh;
  int trace_every = 1;
  Averaging averaging = Averaging::kGeometric;
  int num_threads = 1;
  std::string output_dir = ".";
  bool require_convergence = false;

  // sweep-alpha: temperatures in solve order. `betas` and
  // `alpha_iterations`, when set, give per-temperature step weights and
  // budgets; `warm_start` starts each solve from the previous solution.
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<int> alpha_iterations;
  bool warm_start = true;

  // rh-compare: receding horizons to compare.
  std::vector<int> horizons;

  // Throws ConfigError naming the offending field.
  void Validate() const;
};

// Applies the keys present in `node` on top of `base`. Keys use the long
// flag names with underscores. Throws ConfigError.
ExperimentConfig ConfigFromJson(const nlohmann::json& node,
                                ExperimentConfig base = {});
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// Throws ConfigError for unknown games, GameFormatError or IoError for
// game files.
MfgModel BuildGame(const ExperimentConfig& config);
nlohmann::json GameMetadata(const ExperimentConfig& config,
                            const MfgModel& model);

SolverConfig MakeSolverConfig(const ExperimentConfig& config);
SolverResult Solve(const MfgModel& model, Algorithm algorithm,
                   const SolverConfig& config);

// The concept's distance (exploitability for kNE) of a full-horizon policy.
double ConceptDistance(const TraceRow& row, Concept solution_concept);

// run: trace.csv, result.json and, for receding-horizon algorithms,
// ensemble.json.
struct RunReport {
  SolverResult result;
  double final_distance = 0.0;
};
RunReport RunExperiment(const ExperimentConfig& config, std::ostream& log);

// sweep-alpha: t = 0 policy rows per temperature and concept, plus the
// fictitious-play Nash policy with alpha recorded as 0.
struct SimplexRow {
  double alpha = 0.0;
  Concept solution_concept = Concept::kRE;
  int state = 0;
  int action = 0;
  double prob = 0.0;
  bool converged = false;
};
struct SweepReport {
  std::vector<SimplexRow> rows;
  // Final policies in solve order, one per (concept, alpha), then Nash.
  std::vector<Policy> policies;
};
SweepReport SweepAlpha(const ExperimentConfig& config, std::ostream& log);
std::string SimplexCsv(const std::vector<SimplexRow>& rows);

// rh-compare: distance of each horizon's implemented policy to the
// full-horizon solution of the same concept, over iterations.
struct RhCompareRow {
  int horizon_rh = 0;
  int iteration = 0;
  double distance = 0.0;
};
struct RhCompareReport {
  std::vector<RhCompareRow> rows;
  // Final distance per entry of config.horizons.
  std::vector<double> final_distances;
};
RhCompareReport RhCompare(const ExperimentConfig& config, std::ostream& log);
std::string RhCsv(const std::vector<RhCompareRow>& rows);

// rh-seq-vs-par: iterations to tolerance per subgame for both variants.
struct SeqParReport {
  std::vector<int> sequential;
  std::vector<int> parallel;
  int sequential_total = 0;
  int parallel_total = 0;
  bool sequential_converged = false;
  bool parallel_converged = false;
  // Subgame 0 iterates agree over the sequential run's subgame 0 iterations.
  bool first_subgame_identical = false;
};
SeqParReport SeqVsPar(const ExperimentConfig& config, std::ostream& log);
std::string SeqParCsv(const SeqParReport& report);

// validate: probes the game at the uniform mean field and every simplex
// vertex.
ValidationReport ValidateGame(const ExperimentConfig& config,
                              std::ostream& log);

}  // namespace mfg

#endif  // MFG_TOOLS_EXPERIMENTS_H_
