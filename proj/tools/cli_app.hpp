// Copyright 2026 The cvhbt Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cvhbt::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidFlags = 2,
  kUnphysical = 3,
  kOracleFailure = 4,
  kFitFailure = 5,
};

inline constexpr int kSchemaVersion = 1;

/// Environment variable naming the directory that receives
/// `<command>.<ext>` when --out is not given.
inline constexpr const char* kOutputDirEnv = "CVHBT_OUTPUT_DIR";

struct RunConfig {
  std::string command;
  std::optional<double> nbar;
  std::vector<double> mc;   // --mc, may repeat for hom-dip
  std::vector<double> mc2;  // --mc2, exclusive with --mc
  std::optional<int> steps;
  double t_min = -3.0;
  double t_max = 3.0;
  int phases = 24;
  double mean_counts = 1e4;
  std::uint64_t seed = 0;
  double tail_tol = 1e-10;
  double tol = 1e-5;
  double k_sigma = 3.0;
  std::string format;  // empty: command default
  std::string out;
};

/// Parses argv and executes; writes artifacts to `out` (or files) and
/// diagnostics to `err`. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cvhbt::cli
