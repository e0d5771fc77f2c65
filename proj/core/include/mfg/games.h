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

#ifndef MFG_GAMES_H_
#define MFG_GAMES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "mfg/model.h"
#include "mfg/types.h"

namespace mfg {

class GameFormatError : public MfgError {
 public:
  using MfgError::MfgError;
};

// Susceptible-infectious-susceptible epidemic with optional quarantine.
namespace sis {
enum State : int { kSusceptible = 0, kInfected = 1 };
enum Action : int { kNoQuarantine = 0, kQuarantine = 1 };
}  // namespace sis

struct SisParams {
  double healing_rate = 0.4;     // gamma
  double infection_rate = 0.81;  // kappa
  double infection_cost = 1.0;   // c_i
  double quarantine_cost = 0.5;  // c_q
  double initial_infected = 0.1;
  int horizon = 50;
};

MfgModel MakeSis(const SisParams& params = {});

// Rock-paper-scissors with mean-field dependent jump success. Action u
// targets state u + 1.
namespace rps {
enum State : int { kStart = 0, kRock = 1, kPaper = 2, kScissor = 3 };
enum Action : int { kToRock = 0, kToPaper = 1, kToScissor = 2 };
}  // namespace rps

struct RpsParams {
  double a = 10.0;
  double b = 1.0;
  double c = 10.0;
  int horizon = 10;
};

MfgModel MakeRps(const RpsParams& params = {});

// Identifier of the generator behind MakeRandom, recorded in experiment
// metadata: the standard 64-bit Mersenne twister, whose output sequence is
// fixed by the C++ standard.
inline constexpr std::string_view kRandomGameGenerator = "mt19937_64";

struct RandomMfgParams {
  int num_states = 100;
  int num_actions = 10;
  int horizon = 10;
  double eta = 1.0;  // crowd aversion weight
  std::uint64_t seed = 0;
  double mf_floor = 1e-10;
};

// Uniform(0,1) transition weights drawn in [t][x][x'][u] order and normalized
// over x', then Uniform(0,1) rewards in [t][x][u] order, plus the crowd
// aversion term -eta * log(max(mu(x), mf_floor)). Uniform initial mean field.
MfgModel MakeRandom(const RandomMfgParams& params = {});

// Maps a raw 64-bit draw to the open interval (0, 1) using its top 52 bits.
double UnitIntervalOpen(std::uint64_t bits);

// Tabular game document; see README for the schema. Transition rows are not
// checked beyond shape here; run ValidateModel on the result.
MfgModel ParseGame(std::string_view json_text,
                   std::string_view source = "<memory>");
MfgModel LoadGame(const std::filesystem::path& path);

}  // namespace mfg

#endif  // MFG_GAMES_H_
