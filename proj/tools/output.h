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

#ifndef MFG_TOOLS_OUTPUT_H_
#define MFG_TOOLS_OUTPUT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mfg/types.h"

namespace mfg {

// Raised when an output file or directory cannot be written or an input file
// cannot be read.
class IoError : public MfgError {
 public:
  using MfgError::MfgError;
};

inline constexpr std::string_view kTraceCsvHeader =
    "iter,delta_qpire,delta_qstarre,delta_re,exploitability,reg_exploitability,"
    "wall_time_s";

// 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string FormatDouble(double value);

// Parses the output of FormatDouble.
double ParseDouble(std::string_view text);

std::string TraceCsv(const ConvergenceTrace& trace);

// Writes through a temporary file in the same directory and renames it into
// place. Creates missing parent directories. Throws IoError.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Reads a whole file. Throws IoError.
std::string ReadFile(const std::filesystem::path& path);

// {"first_time", "num_steps", "num_states", "num_actions",
//  "probabilities": [step][state][action]}.
nlohmann::json PolicyToJson(const Policy& policy);
Policy PolicyFromJson(const nlohmann::json& node);

}  // namespace mfg

#endif  // MFG_TOOLS_OUTPUT_H_
