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

// Experiment driver: mfg <run|sweep-alpha|rh-compare|rh-seq-vs-par|validate>.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.h"
#include "output.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotConverged = 4;

struct Flags {
  std::string config_path;
  std::string game;
  std::string algorithm;
  std::string concept_name;
  std::string averaging;
  std::string output_dir;
  std::string tolerance;
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  int iterations = 0;
  int horizon = 0;
  int horizon_rh = 0;
  int num_states = 0;
  int num_actions = 0;
  int trace_every = 0;
  int num_threads = 0;
  std::uint64_t seed = 0;
  bool require_convergence = false;
  bool no_warm_start = false;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<int> alpha_iterations;
  std::vector<int> horizons;
};

void AddOptions(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path,
                  "JSON file of settings; flags override its values");
  app->add_option("--game", f.game, "sis | rps | random | file:<path>");
  app->add_option("--algorithm", f.algorithm, "gfpi | gfp | rh-seq | rh-par");
  app->add_option("--concept", f.concept_name, "ne | qpi_re | qstar_re | re");
  app->add_option("--alpha", f.alpha, "temperature");
  app->add_option("--beta", f.beta, "averaging weight of the past, in (0, 1)");
  app->add_option("--averaging", f.averaging, "geometric | uniform");
  app->add_option("--iterations", f.iterations, "iteration budget");
  app->add_option("--tolerance", f.tolerance,
                  "early-stop distance; 'inf' stops at once");
  app->add_option("--horizon", f.horizon, "game horizon override");
  app->add_option("--horizon-rh", f.horizon_rh, "receding horizon H");
  app->add_option("--num-states", f.num_states, "random game states");
  app->add_option("--num-actions", f.num_actions, "random game actions");
  app->add_option("--eta", f.eta, "random game crowd aversion");
  app->add_option("--seed", f.seed, "random game seed");
  app->add_option("--output-dir", f.output_dir,
                  "output directory (default: $MFG_OUTPUT_DIR or .)");
  app->add_option("--trace-every", f.trace_every, "metric row period");
  app->add_option("--num-threads", f.num_threads, "threads for rh-par");
  app->add_flag("--require-convergence", f.require_convergence,
                "exit with status 4 unless the tolerance is reached");
  app->add_option("--alphas", f.alphas, "sweep temperatures, in solve order")
      ->delimiter(',');
  app->add_option("--betas", f.betas, "per-temperature beta")->delimiter(',');
  app->add_option("--alpha-iterations", f.alpha_iterations,
                  "per-temperature iteration budget")
      ->delimiter(',');
  app->add_flag("--no-warm-start", f.no_warm_start,
                "solve every temperature from the uniform policy");
  app->add_option("--horizons", f.horizons, "receding horizons to compare")
      ->delimiter(',');
}

bool Given(const CLI::App* app, const char* name) {
  return app->count(name) > 0;
}

mfg::ExperimentConfig BuildConfig(const CLI::App* app, const Flags& f) {
  mfg::ExperimentConfig config;
  if (const char* env = std::getenv("MFG_OUTPUT_DIR"); env && *env) {
    config.output_dir = env;
  }
  if (Given(app, "--config")) {
    nlohmann::json doc;
    const std::string text = mfg::ReadFile(f.config_path);
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw mfg::ConfigError("config", f.config_path + ": " + e.what());
    }
    config = mfg::ConfigFromJson(doc, std::move(config));
  }
  nlohmann::json overrides = nlohmann::json::object();
  if (Given(app, "--game")) overrides["game"] = f.game;
  if (Given(app, "--algorithm")) overrides["algorithm"] = f.algorithm;
  if (Given(app, "--concept")) overrides["concept"] = f.concept_name;
  if (Given(app, "--averaging")) overrides["averaging"] = f.averaging;
  if (Given(app, "--alpha")) overrides["alpha"] = f.alpha;
  if (Given(app, "--beta")) overrides["beta"] = f.beta;
  if (Given(app, "--eta")) overrides["eta"] = f.eta;
  if (Given(app, "--iterations")) overrides["iterations"] = f.iterations;
  if (Given(app, "--horizon")) overrides["horizon"] = f.horizon;
  if (Given(app, "--horizon-rh")) overrides["horizon_rh"] = f.horizon_rh;
  if (Given(app, "--num-states")) overrides["num_states"] = f.num_states;
  if (Given(app, "--num-actions")) overrides["num_actions"] = f.num_actions;
  if (Given(app, "--seed")) overrides["seed"] = f.seed;
  if (Given(app, "--output-dir")) overrides["output_dir"] = f.output_dir;
  if (Given(app, "--trace-every")) overrides["trace_every"] = f.trace_every;
  if (Given(app, "--num-threads")) overrides["num_threads"] = f.num_threads;
  if (Given(app, "--require-convergence")) {
    overrides["require_convergence"] = f.require_convergence;
  }
  if (Given(app, "--alphas")) overrides["alphas"] = f.alphas;
  if (Given(app, "--betas")) overrides["betas"] = f.betas;
  if (Given(app, "--alpha-iterations")) {
    overrides["alpha_iterations"] = f.alpha_iterations;
  }
  if (Given(app, "--no-warm-start")) overrides["warm_start"] = !f.no_warm_start;
  if (Given(app, "--horizons")) overrides["horizons"] = f.horizons;
  if (Given(app, "--tolerance")) {
    try {
      overrides["tolerance"] = mfg::ParseDouble(f.tolerance);
    } catch (const mfg::MfgError&) {
      throw mfg::ConfigError("tolerance", "expected a number or 'inf'");
    }
    if (std::isinf(overrides["tolerance"].get<double>())) {
      overrides["tolerance"] = "inf";
    }
  }
  return mfg::ConfigFromJson(overrides, std::move(config));
}

int Dispatch(const std::string& command, const mfg::ExperimentConfig& config) {
  if (command == "run") {
    const mfg::RunReport report = mfg::RunExperiment(config, std::cout);
    if (config.require_convergence && !report.result.converged) {
      std::cerr << "error: tolerance not reached within the iteration budget\n";
      return kExitNotConverged;
    }
    return kExitOk;
  }
  if (command == "sweep-alpha") {
    const mfg::SweepReport report = mfg::SweepAlpha(config, std::cout);
    if (config.require_convergence) {
      for (const mfg::SimplexRow& row : report.rows) {
        if (row.solution_concept != mfg::Concept::kNE && !row.converged) {
          return kExitNotConverged;
        }
      }
    }
    return kExitOk;
  }
  if (command == "rh-compare") {
    mfg::RhCompare(config, std::cout);
    return kExitOk;
  }
  if (command == "rh-seq-vs-par") {
    const mfg::SeqParReport report = mfg::SeqVsPar(config, std::cout);
    if (config.require_convergence &&
        !(report.sequential_converged && report.parallel_converged)) {
      return kExitNotConverged;
    }
    return kExitOk;
  }
  if (command == "validate") {
    return mfg::ValidateGame(config, std::cout).ok() ? kExitOk : kExitConfig;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-rationality equilibria for finite mean field games"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"run", "solve one game and write trace.csv and result.json"},
      {"sweep-alpha", "solve each concept over --alphas; write simplex.csv"},
      {"rh-compare", "compare receding horizons; write rh.csv"},
      {"rh-seq-vs-par", "sequential vs parallel RH; write seqpar.csv"},
      {"validate", "check transition rows and rewards of a game"},
  };
  std::vector<CLI::App*> subcommands;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    AddOptions(sub, flags);
    subcommands.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (std::size_t i = 0; i < subcommands.size(); ++i) {
    if (!subcommands[i]->parsed()) continue;
    try {
      const mfg::ExperimentConfig config = BuildConfig(subcommands[i], flags);
      return Dispatch(commands[i].first, config);
    } catch (const mfg::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const mfg::IoError& e) {
      std::cerr << "i/o error: " << e.what() << "\n";
      return kExitIo;
    } catch (const mfg::GameFormatError& e) {
      std::cerr << "game format error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const mfg::MfgError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  return kExitConfig;
}
