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

#include "mfg/games.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace mfg {
namespace {

using json = nlohmann::json;

void Require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw MfgError(std::string(field) + ": " + message);
}

}  // namespace

MfgModel MakeSis(const SisParams& params) {
  Require(params.healing_rate >= 0.0 && params.healing_rate <= 1.0,
          "healing_rate", "must lie in [0, 1]");
  Require(params.infection_rate >= 0.0 && params.infection_rate <= 1.0,
          "infection_rate", "must lie in [0, 1]");
  Require(params.infection_cost >= 0.0, "infection_cost", "must be >= 0");
  Require(params.quarantine_cost >= 0.0, "quarantine_cost", "must be >= 0");
  Require(params.initial_infected >= 0.0 && params.initial_infected <= 1.0,
          "initial_infected", "must lie in [0, 1]");
  Require(params.horizon > 0, "horizon", "must be positive");

  const SisParams p = params;
  auto transition = [p](int, int x, int u, std::span<const double> mu,
                        std::span<double> next) {
    double to_infected = 0.0;
    if (x == sis::kInfected) {
      to_infected = 1.0 - p.healing_rate;
    } else if (u == sis::kNoQuarantine) {
      to_infected = p.infection_rate * mu[sis::kInfected];
    }
    next[sis::kSusceptible] = 1.0 - to_infected;
    next[sis::kInfected] = to_infected;
  };
  // (S, Q) carries the infection cost as well.
  auto reward = [p](int, int x, int u, std::span<const double>) {
    if (u == sis::kQuarantine) return -p.infection_cost - p.quarantine_cost;
    return x == sis::kInfected ? -p.infection_cost : 0.0;
  };
  return MfgModel("sis", 2, 2, p.horizon,
                  {1.0 - p.initial_infected, p.initial_infected}, transition,
                  reward);
}

MfgModel MakeRps(const RpsParams& params) {
  Require(std::isfinite(params.a) && std::isfinite(params.b) &&
              std::isfinite(params.c),
          "weights", "must be finite");
  Require(params.horizon > 0, "horizon", "must be positive");

  auto transition = [](int, int x, int u, std::span<const double> mu,
                       std::span<double> next) {
    std::fill(next.begin(), next.end(), 0.0);
    const int target = u + 1;
    if (target == x) {
      next[x] = 1.0;
      return;
    }
    next[target] = 1.0 - mu[target];
    next[x] = mu[target];
  };
  const RpsParams p = params;
  auto reward = [p](int, int x, int, std::span<const double> mu) {
    switch (x) {
      case rps::kRock:
        return -p.a * mu[rps::kPaper] + p.b * mu[rps::kScissor];
      case rps::kPaper:
        return -p.c * mu[rps::kScissor] + p.a * mu[rps::kRock];
      case rps::kScissor:
        return -p.b * mu[rps::kRock] + p.c * mu[rps::kPaper];
      default:
        return 0.0;
    }
  };
  return MfgModel("rps", 4, 3, p.horizon, {1.0, 0.0, 0.0, 0.0}, transition,
                  reward);
}

double UnitIntervalOpen(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

MfgModel MakeRandom(const RandomMfgParams& params) {
  Require(params.num_states > 0, "num_states", "must be positive");
  Require(params.num_actions > 0, "num_actions", "must be positive");
  Require(params.horizon > 0, "horizon", "must be positive");
  Require(params.eta >= 0.0, "eta", "must be >= 0");
  Require(params.mf_floor > 0.0, "mf_floor", "must be positive");

  const int xs = params.num_states;
  const int us = params.num_actions;
  const int horizon = params.horizon;
  std::mt19937_64 engine(params.seed);

  // Stored as [t][x][u][x'] for row access.
  auto transitions = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(horizon) * xs * us * xs);
  auto at = [&](int t, int x, int u, int xn) -> double& {
    return (
        *transitions)[((static_cast<std::size_t>(t) * xs + x) * us + u) * xs +
                      xn];
  };
  for (int t = 0; t < horizon; ++t) {
    for (int x = 0; x < xs; ++x) {
      for (int xn = 0; xn < xs; ++xn) {
        for (int u = 0; u < us; ++u)
          at(t, x, u, xn) = UnitIntervalOpen(engine());
      }
    }
    for (int x = 0; x < xs; ++x) {
      for (int u = 0; u < us; ++u) {
        double total = 0.0;
        for (int xn = 0; xn < xs; ++xn) total += at(t, x, u, xn);
        for (int xn = 0; xn < xs; ++xn) at(t, x, u, xn) /= total;
      }
    }
  }
  auto rewards = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(horizon) * xs * us);
  for (double& r : *rewards) r = UnitIntervalOpen(engine());

  auto transition = [transitions, xs, us](int t, int x, int u,
                                          std::span<const double>,
                                          std::span<double> next) {
    const double* row = transitions->data() +
                        ((static_cast<std::size_t>(t) * xs + x) * us + u) * xs;
    std::copy(row, row + xs, next.begin());
  };
  auto reward = [rewards, xs, us, eta = params.eta, floor = params.mf_floor](
                    int t, int x, int u, std::span<const double> mu) {
    const double base =
        (*rewards)[(static_cast<std::size_t>(t) * xs + x) * us + u];
    if (eta == 0.0) return base;
    return base - eta * std::log(std::max(mu[x], floor));
  };
  return MfgModel("random", xs, us, horizon, std::vector<double>(xs, 1.0 / xs),
                  transition, reward);
}

namespace {

std::vector<double> ReadVector(const json& node, const std::string& field,
                               std::size_t expected) {
  if (!node.is_array() || node.size() != expected) {
    throw GameFormatError("field '" + field + "': expected an array of " +
                          std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw GameFormatError("field '" + field + "[" + std::to_string(i) +
                            "]': expected a number");
    }
    out.push_back(node[i].get<double>());
  }
  return out;
}

// Appends a nested array of the given shape to `out` in row-major order.
void ReadNested(const json& node, const std::string& field,
                std::span<const std::size_t> shape, std::vector<double>& out) {
  if (shape.size() == 1) {
    const std::vector<double> row = ReadVector(node, field, shape[0]);
    out.insert(out.end(), row.begin(), row.end());
    return;
  }
  if (!node.is_array() || node.size() != shape[0]) {
    throw GameFormatError("field '" + field + "': expected an array of " +
                          std::to_string(shape[0]) + " entries");
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    ReadNested(node[i], field + "[" + std::to_string(i) + "]", shape.subspan(1),
               out);
  }
}

int ArrayDepth(const json& node) {
  int depth = 0;
  const json* cur = &node;
  while (cur->is_array() && !cur->empty()) {
    ++depth;
    cur = &(*cur)[0];
  }
  return depth;
}

int ReadPositiveInt(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number_integer() ||
      doc[field].get<long long>() <= 0) {
    throw GameFormatError(std::string("field '") + field +
                          "': expected a positive integer");
  }
  return doc[field].get<int>();
}

// Reads a table that is either per time ([t] + inner) or time-invariant
// (inner only) and expands it to [t] + inner.
std::vector<double> ReadTimeIndexed(const json& node, const std::string& field,
                                    int horizon,
                                    std::vector<std::size_t> inner) {
  std::vector<double> out;
  const int depth = ArrayDepth(node);
  if (depth == static_cast<int>(inner.size()) + 1) {
    inner.insert(inner.begin(), static_cast<std::size_t>(horizon));
    ReadNested(node, field, inner, out);
  } else if (depth == static_cast<int>(inner.size())) {
    std::vector<double> once;
    ReadNested(node, field, inner, once);
    for (int t = 0; t < horizon; ++t) {
      out.insert(out.end(), once.begin(), once.end());
    }
  } else {
    throw GameFormatError("field '" + field +
                          "': expected a nested array of "
                          "depth " +
                          std::to_string(inner.size()) + " or " +
                          std::to_string(inner.size() + 1));
  }
  return out;
}

}  // namespace

MfgModel ParseGame(std::string_view json_text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw GameFormatError(std::string(source) + ": parse error: " + e.what());
  }
  try {
    if (!doc.is_object()) {
      throw GameFormatError("top level: expected a JSON object");
    }
    const std::string name = doc.contains("name") && doc["name"].is_string()
                                 ? doc["name"].get<std::string>()
                                 : std::string("file");
    const int xs = ReadPositiveInt(doc, "num_states");
    const int us = ReadPositiveInt(doc, "num_actions");
    const int horizon = ReadPositiveInt(doc, "horizon");
    if (!doc.contains("initial_mf")) {
      throw GameFormatError("field 'initial_mf': missing");
    }
    std::vector<double> initial_mf =
        ReadVector(doc["initial_mf"], "initial_mf", xs);

    if (!doc.contains("transitions")) {
      throw GameFormatError("field 'transitions': missing");
    }
    const std::vector<std::size_t> xux = {static_cast<std::size_t>(xs),
                                          static_cast<std::size_t>(us),
                                          static_cast<std::size_t>(xs)};
    std::vector<double> transitions;
    const json& tnode = doc["transitions"];
    if (tnode.is_string()) {
      if (tnode.get<std::string>() != "time-invariant") {
        throw GameFormatError(
            "field 'transitions': the only accepted string "
            "is \"time-invariant\"");
      }
      if (!doc.contains("transition_table")) {
        throw GameFormatError(
            "field 'transition_table': required when "
            "transitions are time-invariant");
      }
      std::vector<double> once;
      ReadNested(doc["transition_table"], "transition_table", xux, once);
      for (int t = 0; t < horizon; ++t) {
        transitions.insert(transitions.end(), once.begin(), once.end());
      }
    } else {
      transitions = ReadTimeIndexed(tnode, "transitions", horizon, xux);
    }

    if (!doc.contains("rewards")) {
      throw GameFormatError("field 'rewards': missing");
    }
    const std::vector<double> rewards = ReadTimeIndexed(
        doc["rewards"], "rewards", horizon,
        {static_cast<std::size_t>(xs), static_cast<std::size_t>(us)});

    double eta = 0.0;
    double floor = 1e-10;
    std::vector<double> crowd;  // [x][x'] when present
    if (doc.contains("coupling")) {
      const json& coupling = doc["coupling"];
      if (!coupling.is_object()) {
        throw GameFormatError("field 'coupling': expected an object");
      }
      if (coupling.contains("log_barrier")) {
        const json& lb = coupling["log_barrier"];
        if (!lb.is_object() || !lb.contains("eta") || !lb["eta"].is_number()) {
          throw GameFormatError(
              "field 'coupling.log_barrier.eta': expected a "
              "number");
        }
        eta = lb["eta"].get<double>();
        if (lb.contains("floor")) {
          if (!lb["floor"].is_number() || !(lb["floor"].get<double>() > 0.0)) {
            throw GameFormatError(
                "field 'coupling.log_barrier.floor': "
                "expected a positive number");
          }
          floor = lb["floor"].get<double>();
        }
      }
      if (coupling.contains("linear")) {
        const json& lin = coupling["linear"];
        if (!lin.is_object() || !lin.contains("matrix")) {
          throw GameFormatError("field 'coupling.linear.matrix': missing");
        }
        const std::vector<std::size_t> xx = {static_cast<std::size_t>(xs),
                                             static_cast<std::size_t>(xs)};
        ReadNested(lin["matrix"], "coupling.linear.matrix", xx, crowd);
      }
    }

    auto tables =
        std::make_shared<const std::vector<double>>(std::move(transitions));
    auto stage_rewards = std::make_shared<const std::vector<double>>(rewards);
    auto crowd_matrix =
        std::make_shared<const std::vector<double>>(std::move(crowd));
    auto transition = [tables, xs, us](int t, int x, int u,
                                       std::span<const double>,
                                       std::span<double> next) {
      const double* row =
          tables->data() +
          ((static_cast<std::size_t>(t) * xs + x) * us + u) * xs;
      std::copy(row, row + xs, next.begin());
    };
    auto reward = [stage_rewards, crowd_matrix, xs, us, eta, floor](
                      int t, int x, int u, std::span<const double> mu) {
      double r =
          (*stage_rewards)[(static_cast<std::size_t>(t) * xs + x) * us + u];
      if (eta != 0.0) r -= eta * std::log(std::max(mu[x], floor));
      if (!crowd_matrix->empty()) {
        const double* row =
            crowd_matrix->data() + static_cast<std::size_t>(x) * xs;
        for (int xn = 0; xn < xs; ++xn) r += row[xn] * mu[xn];
      }
      return r;
    };
    return MfgModel(name, xs, us, horizon, std::move(initial_mf), transition,
                    reward);
  } catch (const GameFormatError& e) {
    throw GameFormatError(std::string(source) + ": " + e.what());
  } catch (const json::exception& e) {
    throw GameFormatError(std::string(source) + ": " + e.what());
  } catch (const MfgError& e) {
    throw GameFormatError(std::string(source) + ": " + e.what());
  }
}

MfgModel LoadGame(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GameFormatError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGame(buffer.str(), path.string());
}

}  // namespace mfg
