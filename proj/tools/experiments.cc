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

#include "experiments.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <utility>

#include "mfg/operators.h"
#include "output.h"

namespace mfg {
namespace {

using json = nlohmann::json;

constexpr std::string_view kFilePrefix = "file:";
constexpr Concept kRegularizedConcepts[] = {Concept::kQPiRE, Concept::kQStarRE,
                                            Concept::kRE};

bool IsRecedingHorizon(Algorithm algorithm) {
  return algorithm == Algorithm::kRhSequential ||
         algorithm == Algorithm::kRhParallel;
}

std::filesystem::path OutputPath(const ExperimentConfig& config,
                                 std::string_view name) {
  return std::filesystem::path(config.output_dir) / std::string(name);
}

void WriteJson(const std::filesystem::path& path, const json& doc) {
  WriteFileAtomic(path, doc.dump(2) + "\n");
}

// JSON has no infinity; the strings "inf" and "infinity" stand in for it.
double ReadDouble(const json& node, const std::string& key) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) {
    const std::string text = node.get<std::string>();
    if (text == "inf" || text == "infinity") {
      return std::numeric_limits<double>::infinity();
    }
  }
  throw ConfigError(key, "expected a number");
}

int ReadInt(const json& node, const std::string& key) {
  if (!node.is_number_integer()) throw ConfigError(key, "expected an integer");
  return node.get<int>();
}

std::string ReadString(const json& node, const std::string& key) {
  if (!node.is_string()) throw ConfigError(key, "expected a string");
  return node.get<std::string>();
}

bool ReadBool(const json& node, const std::string& key) {
  if (!node.is_boolean()) throw ConfigError(key, "expected true or false");
  return node.get<bool>();
}

template <typename T, typename ReadFn>
std::vector<T> ReadList(const json& node, const std::string& key, ReadFn read) {
  if (!node.is_array()) throw ConfigError(key, "expected an array");
  std::vector<T> out;
  for (const json& item : node) out.push_back(read(item, key));
  return out;
}

json TraceRowJson(const TraceRow& row) {
  return {{"iteration", row.iteration},
          {"delta_qpire", row.delta_qpire},
          {"delta_qstarre", row.delta_qstarre},
          {"delta_re", row.delta_re},
          {"exploitability", row.exploitability},
          {"reg_exploitability", row.reg_exploitability}};
}

// Largest windowed concept distance over the members, each started from its
// predecessor's induced mean field; summed exploitability for kNE.
double EnsembleDistance(const MfgModel& model, const PolicyEnsemble& ensemble,
                        double alpha, Concept solution_concept) {
  if (solution_concept == Concept::kNE) {
    return RhExploitability(model, ensemble, 0.0);
  }
  const std::vector<std::vector<double>> starts =
      ChainedStartMfs(model, ensemble);
  double distance = 0.0;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    distance = std::max(
        distance, WindowedDeltaEquilibrium(model, ensemble.members[i],
                                           starts[i], alpha, solution_concept));
  }
  return distance;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGfpi:
      return "gfpi";
    case Algorithm::kGfp:
      return "gfp";
    case Algorithm::kRhSequential:
      return "rh-seq";
    case Algorithm::kRhParallel:
      return "rh-par";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kGfpi, Algorithm::kGfp,
                      Algorithm::kRhSequential, Algorithm::kRhParallel}) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view AveragingName(Averaging averaging) {
  return averaging == Averaging::kGeometric ? "geometric" : "uniform";
}

std::optional<Averaging> ParseAveraging(std::string_view name) {
  if (name == "geometric") return Averaging::kGeometric;
  if (name == "uniform") return Averaging::kUniform;
  return std::nullopt;
}

void ExperimentConfig::Validate() const {
  if (game != "sis" && game != "rps" && game != "random" &&
      !(game.starts_with(kFilePrefix) && game.size() > kFilePrefix.size())) {
    throw ConfigError(
        "game", "expected sis, rps, random or file:<path>, got '" + game + "'");
  }
  if (horizon.has_value() && *horizon < 1) {
    throw ConfigError("horizon", "must be positive");
  }
  if (num_states < 1) throw ConfigError("num_states", "must be positive");
  if (num_actions < 1) throw ConfigError("num_actions", "must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw ConfigError("eta", "must be finite and nonnegative");
  }
  if (!(mf_floor > 0.0)) throw ConfigError("mf_floor", "must be positive");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("beta", "must lie in (0, 1), got " + FormatDouble(beta));
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha", "must be finite and nonnegative");
  }
  if (solution_concept != Concept::kNE && alpha == 0.0) {
    throw ConfigError("alpha", "must be positive for regularized concepts");
  }
  if (iterations < 0) throw ConfigError("iterations", "must be nonnegative");
  if (!(tolerance >= 0.0)) {
    throw ConfigError("tolerance", "must be nonnegative");
  }
  if (horizon_rh.has_value() && *horizon_rh < 1) {
    throw ConfigError("horizon_rh", "must be at least 1");
  }
  if (IsRecedingHorizon(algorithm) && !horizon_rh.has_value()) {
    throw ConfigError("horizon_rh",
                      "required by " + std::string(AlgorithmName(algorithm)));
  }
  if (trace_every < 1) throw ConfigError("trace_every", "must be at least 1");
  if (num_threads < 1) throw ConfigError("num_threads", "must be at least 1");
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ConfigError("alphas", "temperatures must be finite and positive");
    }
  }
  if (!betas.empty() && betas.size() != alphas.size()) {
    throw ConfigError("betas", "needs one entry per temperature");
  }
  for (double b : betas) {
    if (!(b > 0.0 && b < 1.0)) throw ConfigError("betas", "must lie in (0, 1)");
  }
  if (!alpha_iterations.empty() && alpha_iterations.size() != alphas.size()) {
    throw ConfigError("alpha_iterations", "needs one entry per temperature");
  }
  for (int n : alpha_iterations) {
    if (n < 0) throw ConfigError("alpha_iterations", "must be nonnegative");
  }
  for (int h : horizons) {
    if (h < 1) throw ConfigError("horizons", "must be at least 1");
  }
}

ExperimentConfig ConfigFromJson(const json& node, ExperimentConfig base) {
  if (!node.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig c = std::move(base);
  for (const auto& [key, value] : node.items()) {
    if (key == "game") {
      c.game = ReadString(value, key);
    } else if (key == "horizon") {
      if (value.is_null()) {
        c.horizon.reset();
      } else {
        c.horizon = ReadInt(value, key);
      }
    } else if (key == "num_states") {
      c.num_states = ReadInt(value, key);
    } else if (key == "num_actions") {
      c.num_actions = ReadInt(value, key);
    } else if (key == "eta") {
      c.eta = ReadDouble(value, key);
    } else if (key == "mf_floor") {
      c.mf_floor = ReadDouble(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ConfigError(key, "expected a nonnegative integer");
      }
      c.seed = value.get<std::uint64_t>();
    } else if (key == "algorithm") {
      const std::optional<Algorithm> a = ParseAlgorithm(ReadString(value, key));
      if (!a) throw ConfigError(key, "expected gfpi, gfp, rh-seq or rh-par");
      c.algorithm = *a;
    } else if (key == "concept") {
      const std::optional<Concept> k = ParseConcept(ReadString(value, key));
      if (!k) throw ConfigError(key, "expected ne, qpi_re, qstar_re or re");
      c.solution_concept = *k;
    } else if (key == "alpha") {
      c.alpha = ReadDouble(value, key);
    } else if (key == "beta") {
      c.beta = ReadDouble(value, key);
    } else if (key == "iterations") {
      c.iterations = ReadInt(value, key);
    } else if (key == "tolerance") {
      c.tolerance = ReadDouble(value, key);
    } else if (key == "horizon_rh") {
      if (value.is_null()) {
        c.horizon_rh.reset();
      } else {
        c.horizon_rh = ReadInt(value, key);
      }
    } else if (key == "trace_every") {
      c.trace_every = ReadInt(value, key);
    } else if (key == "averaging") {
      const std::optional<Averaging> a = ParseAveraging(ReadString(value, key));
      if (!a) throw ConfigError(key, "expected geometric or uniform");
      c.averaging = *a;
    } else if (key == "num_threads") {
      c.num_threads = ReadInt(value, key);
    } else if (key == "output_dir") {
      c.output_dir = ReadString(value, key);
    } else if (key == "require_convergence") {
      c.require_convergence = ReadBool(value, key);
    } else if (key == "alphas") {
      c.alphas = ReadList<double>(value, key, ReadDouble);
    } else if (key == "betas") {
      c.betas = ReadList<double>(value, key, ReadDouble);
    } else if (key == "alpha_iterations") {
      c.alpha_iterations = ReadList<int>(value, key, ReadInt);
    } else if (key == "warm_start") {
      c.warm_start = ReadBool(value, key);
    } else if (key == "horizons") {
      c.horizons = ReadList<int>(value, key, ReadInt);
    } else {
      throw ConfigError(key, "unknown setting");
    }
  }
  return c;
}

json ConfigToJson(const ExperimentConfig& c) {
  json node = {
      {"game", c.game},
      {"num_states", c.num_states},
      {"num_actions", c.num_actions},
      {"eta", c.eta},
      {"mf_floor", c.mf_floor},
      {"seed", c.seed},
      {"algorithm", std::string(AlgorithmName(c.algorithm))},
      {"concept", std::string(ConceptName(c.solution_concept))},
      {"alpha", c.alpha},
      {"beta", c.beta},
      {"iterations", c.iterations},
      {"trace_every", c.trace_every},
      {"averaging", std::string(AveragingName(c.averaging))},
      {"num_threads", c.num_threads},
      {"output_dir", c.output_dir},
      {"require_convergence", c.require_convergence},
      {"alphas", c.alphas},
      {"betas", c.betas},
      {"alpha_iterations", c.alpha_iterations},
      {"warm_start", c.warm_start},
      {"horizons", c.horizons},
  };
  if (std::isinf(c.tolerance)) {
    node["tolerance"] = "inf";
  } else {
    node["tolerance"] = c.tolerance;
  }
  node["horizon"] = c.horizon ? json(*c.horizon) : json(nullptr);
  node["horizon_rh"] = c.horizon_rh ? json(*c.horizon_rh) : json(nullptr);
  return node;
}

MfgModel BuildGame(const ExperimentConfig& config) {
  if (config.game == "sis") {
    SisParams params;
    if (config.horizon) params.horizon = *config.horizon;
    return MakeSis(params);
  }
  if (config.game == "rps") {
    RpsParams params;
    if (config.horizon) params.horizon = *config.horizon;
    return MakeRps(params);
  }
  if (config.game == "random") {
    RandomMfgParams params;
    params.num_states = config.num_states;
    params.num_actions = config.num_actions;
    if (config.horizon) params.horizon = *config.horizon;
    params.eta = config.eta;
    params.seed = config.seed;
    params.mf_floor = config.mf_floor;
    return MakeRandom(params);
  }
  if (config.game.starts_with(kFilePrefix)) {
    if (config.horizon) {
      throw ConfigError("horizon", "a game file fixes its own horizon");
    }
    const std::string path = config.game.substr(kFilePrefix.size());
    return ParseGame(ReadFile(path), path);
  }
  throw ConfigError("game", "unknown game '" + config.game + "'");
}

json GameMetadata(const ExperimentConfig& config, const MfgModel& model) {
  json node = {{"source", config.game},
               {"name", model.name()},
               {"num_states", model.num_states()},
               {"num_actions", model.num_actions()},
               {"horizon", model.horizon()}};
  if (config.game == "random") {
    node["prng"] = std::string(kRandomGameGenerator);
    node["seed"] = config.seed;
    node["eta"] = config.eta;
    node["mf_floor"] = config.mf_floor;
  }
  return node;
}

SolverConfig MakeSolverConfig(const ExperimentConfig& config) {
  SolverConfig sc;
  sc.solution_concept = config.solution_concept;
  sc.alpha = config.alpha;
  sc.beta = config.beta;
  sc.max_iterations = config.iterations;
  sc.tolerance = config.tolerance;
  sc.horizon_rh = config.horizon_rh;
  sc.trace_every = config.trace_every;
  sc.averaging = config.averaging;
  sc.num_threads = config.num_threads;
  return sc;
}

SolverResult Solve(const MfgModel& model, Algorithm algorithm,
                   const SolverConfig& config) {
  switch (algorithm) {
    case Algorithm::kGfpi:
      return Gfpi(model, config);
    case Algorithm::kGfp:
      return Gfp(model, config);
    case Algorithm::kRhSequential:
      return RhSequential(model, config);
    case Algorithm::kRhParallel:
      return RhParallel(model, config);
  }
  throw ConfigError("algorithm", "unknown algorithm");
}

double ConceptDistance(const TraceRow& row, Concept solution_concept) {
  switch (solution_concept) {
    case Concept::kNE:
      return row.exploitability;
    case Concept::kQPiRE:
      return row.delta_qpire;
    case Concept::kQStarRE:
      return row.delta_qstarre;
    case Concept::kRE:
      return row.delta_re;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

RunReport RunExperiment(const ExperimentConfig& config, std::ostream& log) {
  config.Validate();
  const MfgModel model = BuildGame(config);
  const SolverConfig sc = MakeSolverConfig(config);
  RunReport report;
  report.result = Solve(model, config.algorithm, sc);
  const SolverResult& result = report.result;
  report.final_distance = DeltaEquilibrium(
      model, result.final_policy, config.alpha, config.solution_concept);

  json doc = {
      {"config", ConfigToJson(config)},
      {"game", GameMetadata(config, model)},
      {"prng", std::string(kRandomGameGenerator)},
      {"converged", result.converged},
      {"iterations_used", result.iterations_used},
      {"final_distance", report.final_distance},
      {"final_metrics",
       TraceRowJson(EvaluateTraceRow(model, result.final_policy,
                                     model.initial_mf(), config.alpha))},
      {"final_policy", PolicyToJson(result.final_policy)},
  };
  WriteFileAtomic(OutputPath(config, "trace.csv"), TraceCsv(result.trace));
  if (result.ensemble.has_value()) {
    const PolicyEnsemble& ensemble = *result.ensemble;
    doc["ensemble_distance"] = EnsembleDistance(model, ensemble, config.alpha,
                                                config.solution_concept);
    doc["subgame_iterations"] = result.subgame_iterations;
    json members = json::array();
    for (const Policy& member : ensemble.members) {
      members.push_back(PolicyToJson(member));
    }
    json ensemble_doc = {
        {"horizon_rh", ensemble.horizon_rh},
        {"members", std::move(members)},
        {"start_mfs", ChainedStartMfs(model, ensemble)},
        {"subgame_iterations", result.subgame_iterations},
        {"implemented_policy", PolicyToJson(*result.implemented_policy)},
    };
    WriteJson(OutputPath(config, "ensemble.json"), ensemble_doc);
  }
  WriteJson(OutputPath(config, "result.json"), doc);
  log << fmt::format(
      "{} {} on {}: {} after {} iterations, {} distance {}\n",
      AlgorithmName(config.algorithm), ConceptName(config.solution_concept),
      model.name(), result.converged ? "converged" : "not converged",
      result.iterations_used, ConceptName(config.solution_concept),
      FormatDouble(report.final_distance));
  return report;
}

SweepReport SweepAlpha(const ExperimentConfig& config, std::ostream& log) {
  config.Validate();
  if (config.alphas.empty()) {
    throw ConfigError("alphas", "sweep-alpha needs at least one temperature");
  }
  if (IsRecedingHorizon(config.algorithm)) {
    throw ConfigError("algorithm", "sweep-alpha supports gfp and gfpi");
  }
  const MfgModel model = BuildGame(config);
  SweepReport report;
  json solves = json::array();

  auto add_rows = [&](const SolverResult& result, double alpha,
                      Concept solution_concept) {
    const Policy& policy = result.final_policy;
    for (int x = 0; x < policy.num_states(); ++x) {
      for (int u = 0; u < policy.num_actions(); ++u) {
        report.rows.push_back({alpha, solution_concept, x, u,
                               policy.at(0, x, u), result.converged});
      }
    }
    report.policies.push_back(policy);
    solves.push_back({{"alpha", alpha},
                      {"concept", std::string(ConceptName(solution_concept))},
                      {"converged", result.converged},
                      {"iterations_used", result.iterations_used},
                      {"final_metrics", TraceRowJson(result.trace.back())}});
    log << fmt::format("sweep {} alpha={}: {} after {} iterations\n",
                       ConceptName(solution_concept), FormatDouble(alpha),
                       result.converged ? "converged" : "not converged",
                       result.iterations_used);
  };

  for (Concept solution_concept : kRegularizedConcepts) {
    std::optional<Policy> warm;
    for (std::size_t i = 0; i < config.alphas.size(); ++i) {
      SolverConfig sc = MakeSolverConfig(config);
      sc.solution_concept = solution_concept;
      sc.alpha = config.alphas[i];
      if (!config.betas.empty()) sc.beta = config.betas[i];
      if (!config.alpha_iterations.empty()) {
        sc.max_iterations = config.alpha_iterations[i];
      }
      sc.trace_every = sc.max_iterations + 1;
      if (config.warm_start) sc.initial_policy = warm;
      const SolverResult result = Solve(model, config.algorithm, sc);
      warm = result.final_policy;
      add_rows(result, sc.alpha, solution_concept);
    }
  }

  SolverConfig ne = MakeSolverConfig(config);
  ne.solution_concept = Concept::kNE;
  ne.alpha = 0.0;
  ne.trace_every = ne.max_iterations + 1;
  add_rows(Gfp(model, ne), 0.0, Concept::kNE);

  WriteFileAtomic(OutputPath(config, "simplex.csv"), SimplexCsv(report.rows));
  WriteJson(OutputPath(config, "result.json"),
            {{"config", ConfigToJson(config)},
             {"game", GameMetadata(config, model)},
             {"prng", std::string(kRandomGameGenerator)},
             {"solves", std::move(solves)}});
  return report;
}

std::string SimplexCsv(const std::vector<SimplexRow>& rows) {
  std::string out = "alpha,concept,state,action,prob,converged\n";
  for (const SimplexRow& row : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", FormatDouble(row.alpha),
                       ConceptName(row.solution_concept), row.state, row.action,
                       FormatDouble(row.prob), row.converged ? 1 : 0);
  }
  return out;
}

RhCompareReport RhCompare(const ExperimentConfig& config, std::ostream& log) {
  config.Validate();
  if (config.horizons.empty()) {
    throw ConfigError("horizons", "rh-compare needs at least one horizon");
  }
  const MfgModel model = BuildGame(config);
  SolverConfig reference_config = MakeSolverConfig(config);
  reference_config.horizon_rh.reset();
  reference_config.trace_every = reference_config.max_iterations + 1;
  const SolverResult reference = Gfp(model, reference_config);
  log << fmt::format("reference {}: {} after {} iterations\n",
                     ConceptName(config.solution_concept),
                     reference.converged ? "converged" : "not converged",
                     reference.iterations_used);

  RhCompareReport report;
  json runs = json::array();
  for (int horizon_rh : config.horizons) {
    SolverConfig sc = MakeSolverConfig(config);
    sc.horizon_rh = horizon_rh;
    // Metric rows are not needed; the stop rule still runs every iteration.
    sc.trace_every = sc.max_iterations + 1;
    int last_seen = -1;
    bool last_recorded = false;
    auto observer = [&](int k, const PolicyEnsemble& ensemble) {
      last_seen = k;
      last_recorded = k % config.trace_every == 0;
      if (last_recorded) {
        report.rows.push_back(
            {horizon_rh, k,
             PolicyDistance(DiagonalPolicy(ensemble), reference.final_policy)});
      }
    };
    const SolverResult result = config.algorithm == Algorithm::kRhParallel
                                    ? RhParallel(model, sc, observer)
                                    : RhSequential(model, sc, observer);
    const double final_distance =
        PolicyDistance(result.final_policy, reference.final_policy);
    if (!last_recorded) {
      report.rows.push_back({horizon_rh, last_seen, final_distance});
    }
    report.final_distances.push_back(final_distance);
    runs.push_back({{"horizon_rh", horizon_rh},
                    {"converged", result.converged},
                    {"iterations_used", result.iterations_used},
                    {"subgame_iterations", result.subgame_iterations},
                    {"final_distance", final_distance}});
    log << fmt::format("H={}: final distance {}\n", horizon_rh,
                       FormatDouble(final_distance));
  }
  WriteFileAtomic(OutputPath(config, "rh.csv"), RhCsv(report.rows));
  WriteJson(OutputPath(config, "result.json"),
            {{"config", ConfigToJson(config)},
             {"game", GameMetadata(config, model)},
             {"prng", std::string(kRandomGameGenerator)},
             {"reference_converged", reference.converged},
             {"reference_policy", PolicyToJson(reference.final_policy)},
             {"runs", std::move(runs)}});
  return report;
}

std::string RhCsv(const std::vector<RhCompareRow>& rows) {
  std::string out = "horizon,iteration,distance\n";
  for (const RhCompareRow& row : rows) {
    out += fmt::format("{},{},{}\n", row.horizon_rh, row.iteration,
                       FormatDouble(row.distance));
  }
  return out;
}

SeqParReport SeqVsPar(const ExperimentConfig& config, std::ostream& log) {
  config.Validate();
  if (!config.horizon_rh.has_value()) {
    throw ConfigError("horizon_rh", "rh-seq-vs-par needs a receding horizon");
  }
  const MfgModel model = BuildGame(config);
  SolverConfig sc = MakeSolverConfig(config);
  sc.trace_every = sc.max_iterations + 1;

  std::vector<Policy> parallel_first;
  const SolverResult parallel =
      RhParallel(model, sc, [&](int, const PolicyEnsemble& ensemble) {
        parallel_first.push_back(ensemble.members.front());
      });
  // Subgame 0 is solved first, so its inner iteration equals the global one.
  int first_mismatch = std::numeric_limits<int>::max();
  const SolverResult sequential =
      RhSequential(model, sc, [&](int k, const PolicyEnsemble& ensemble) {
        if (k < static_cast<int>(parallel_first.size()) && k < first_mismatch &&
            !(ensemble.members.front() == parallel_first[k])) {
          first_mismatch = k;
        }
      });

  SeqParReport report;
  report.sequential = sequential.subgame_iterations;
  report.parallel = parallel.subgame_iterations;
  report.sequential_total = sequential.iterations_used;
  report.parallel_total = parallel.iterations_used;
  report.sequential_converged = sequential.converged;
  report.parallel_converged = parallel.converged;
  const int compared = sequential.subgame_iterations.front();
  report.first_subgame_identical =
      static_cast<int>(parallel_first.size()) > compared &&
      first_mismatch > compared;

  WriteFileAtomic(OutputPath(config, "seqpar.csv"), SeqParCsv(report));
  WriteJson(OutputPath(config, "result.json"),
            {{"config", ConfigToJson(config)},
             {"game", GameMetadata(config, model)},
             {"prng", std::string(kRandomGameGenerator)},
             {"sequential_converged", report.sequential_converged},
             {"parallel_converged", report.parallel_converged},
             {"sequential_total", report.sequential_total},
             {"parallel_total", report.parallel_total},
             {"first_subgame_identical", report.first_subgame_identical}});
  log << fmt::format(
      "sequential total {} iterations, parallel total {} ({})\n",
      report.sequential_total, report.parallel_total,
      report.sequential_total > 0
          ? FormatDouble(static_cast<double>(report.parallel_total) /
                         report.sequential_total)
          : std::string("n/a"));
  return report;
}

std::string SeqParCsv(const SeqParReport& report) {
  std::string out = "variant,subgame,iterations\n";
  for (std::size_t i = 0; i < report.sequential.size(); ++i) {
    out += fmt::format("sequential,{},{}\n", i, report.sequential[i]);
  }
  for (std::size_t i = 0; i < report.parallel.size(); ++i) {
    out += fmt::format("parallel,{},{}\n", i, report.parallel[i]);
  }
  out += fmt::format("sequential,total,{}\n", report.sequential_total);
  out += fmt::format("parallel,total,{}\n", report.parallel_total);
  return out;
}

ValidationReport ValidateGame(const ExperimentConfig& config,
                              std::ostream& log) {
  const MfgModel model = BuildGame(config);
  const int xs = model.num_states();
  std::vector<std::vector<double>> probes;
  probes.emplace_back(xs, 1.0 / xs);
  for (int x = 0; x < xs; ++x) {
    std::vector<double> vertex(xs, 0.0);
    vertex[x] = 1.0;
    probes.push_back(std::move(vertex));
  }
  // Tabular files carry decimal probabilities; rows are held to 1e-9.
  const double tolerance =
      config.game.starts_with(kFilePrefix) ? 1e-9 : kSimplexTolerance;
  ValidationReport report = ValidateModel(model, probes, tolerance);
  for (const Violation& v : report.violations) log << v.Describe() << "\n";
  log << fmt::format("{}: {} violation(s) over {} probe mean fields\n",
                     model.name(), report.violations.size(), probes.size());
  return report;
}

}  // namespace mfg
