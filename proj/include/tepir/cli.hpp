// Copyright 2026 The tepir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef TEPIR_CLI_HPP_
#define TEPIR_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tepir/scheme.hpp"

namespace tepir {

enum class Subcommand { kRun, kVerify, kBounds, kFigures, kAllCollude };

struct RunConfig {
  Subcommand subcommand = Subcommand::kRun;
  int n = 0;
  int k = 0;
  int t = 0;
  int e = 0;
  std::optional<std::uint64_t> q;
  int index = 1;  // 1-based desired file
  std::uint64_t seed = 1;
  int trials = 100;
  int seeds = 20;
  long long samples = 10000;
  int projection_bits = 8;
  double tolerance = 0.05;
  Sabotage sabotage = Sabotage::kNone;
  std::vector<int> coalition;       // verify: 1-based colluding databases
  std::vector<std::string> checks;  // verify: subset of correctness,system,structural,statistical
  int figure = 1;
  bool json = false;
  std::string out;
  std::string help;  // non-empty when --help was requested
};

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidParameters = 3;
inline constexpr int kExitIo = 4;

// Throws Error with kUsage for malformed command lines and
// kInvalidParameters for parameter sets outside the scheme's region.
// `env_seed` stands in for TEPIR_SEED.
RunConfig parse_args(int argc, const char* const* argv,
                     std::optional<std::string> env_seed = std::nullopt);

// Executes a parsed configuration; returns the exit status.
int execute(const RunConfig& config, std::ostream& out);

// parse_args + execute with errors mapped to exit statuses on `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int exit_code(ErrorCode code);

}  // namespace tepir

#endif  // TEPIR_CLI_HPP_
