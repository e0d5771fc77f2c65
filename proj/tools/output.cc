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

#include "output.h"

#include <fmt/format.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace mfg {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

double ParseDouble(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (end == owned.c_str() || *end != '\0') {
    throw MfgError("not a number: '" + owned + "'");
  }
  return value;
}

std::string TraceCsv(const ConvergenceTrace& trace) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const TraceRow& row : trace.rows()) {
    out += fmt::format(
        "{},{},{},{},{},{},{}\n", row.iteration, FormatDouble(row.delta_qpire),
        FormatDouble(row.delta_qstarre), FormatDouble(row.delta_re),
        FormatDouble(row.exploitability), FormatDouble(row.reg_exploitability),
        FormatDouble(row.wall_time_seconds));
  }
  return out;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  std::error_code ec;
  const std::filesystem::path parent = path.parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent, ec);
    if (ec) {
      throw IoError("cannot create directory '" + parent.string() +
                    "': " + ec.message());
    }
  }
  std::filesystem::path temp = path;
  temp += fmt::format(".tmp{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(temp, ec);
      throw IoError("write to '" + temp.string() + "' failed");
    }
  }
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
    throw IoError("cannot move output into '" + path.string() +
                  "': " + ec.message());
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read from '" + path.string() + "' failed");
  return buffer.str();
}

nlohmann::json PolicyToJson(const Policy& policy) {
  nlohmann::json probabilities = nlohmann::json::array();
  for (int s = 0; s < policy.num_steps(); ++s) {
    nlohmann::json stage = nlohmann::json::array();
    for (int x = 0; x < policy.num_states(); ++x) {
      const std::span<const double> row = policy.row(s, x);
      stage.push_back(
          nlohmann::json(std::vector<double>(row.begin(), row.end())));
    }
    probabilities.push_back(std::move(stage));
  }
  return {{"first_time", policy.first_time()},
          {"num_steps", policy.num_steps()},
          {"num_states", policy.num_states()},
          {"num_actions", policy.num_actions()},
          {"probabilities", std::move(probabilities)}};
}

Policy PolicyFromJson(const nlohmann::json& node) {
  try {
    Policy policy(
        node.at("first_time").get<int>(), node.at("num_steps").get<int>(),
        node.at("num_states").get<int>(), node.at("num_actions").get<int>());
    const nlohmann::json& probabilities = node.at("probabilities");
    if (probabilities.size() != static_cast<std::size_t>(policy.num_steps())) {
      throw MfgError("policy: wrong number of stages");
    }
    for (int s = 0; s < policy.num_steps(); ++s) {
      const nlohmann::json& stage = probabilities[s];
      if (stage.size() != static_cast<std::size_t>(policy.num_states())) {
        throw MfgError("policy: wrong number of states");
      }
      for (int x = 0; x < policy.num_states(); ++x) {
        const nlohmann::json& row = stage[x];
        if (row.size() != static_cast<std::size_t>(policy.num_actions())) {
          throw MfgError("policy: wrong number of actions");
        }
        for (int u = 0; u < policy.num_actions(); ++u) {
          policy.at(s, x, u) = row[u].get<double>();
        }
      }
    }
    return policy;
  } catch (const nlohmann::json::exception& e) {
    throw MfgError(std::string("policy: ") + e.what());
  }
}

}  // namespace mfg
