// Copyright 2026 The dplqg Authors
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

#ifndef DPLQG_COMMANDS_H_
#define DPLQG_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

namespace dplqg {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitAssumption = 3,
  kExitNonConvergence = 4,
  kExitBoundInapplicable = 5,
};

// Flags shared by the CLI verbs. Unset fields fall back to the config.
struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::int64_t> steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::vector<double>> grid;
  std::optional<int> seeds;
  // Use the serial sweep kernel instead of the OpenMP one.
  bool serial = false;
};

// Each verb writes its files under the output directory, prints a short
// summary to `out` and diagnostics to `err`, and returns an ExitCode.
//
//   synthesize     -> synthesis.txt
//   simulate       -> trace.csv, wire_log.csv, summary.txt
//   sweep-epsilon  -> sweep.csv
//   bound          -> bound.txt
int RunSynthesize(const CommandOptions& opts, std::ostream& out,
                  std::ostream& err);
int RunSimulate(const CommandOptions& opts, std::ostream& out,
                std::ostream& err);
int RunSweepEpsilon(const CommandOptions& opts, std::ostream& out,
                    std::ostream& err);
int RunBound(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace dplqg

#endif  // DPLQG_COMMANDS_H_
