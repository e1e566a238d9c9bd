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


// Instance-level checks of correctness and of the two privacy properties.
// Verifiers report; they do not throw on a failed property.

#ifndef TEPIR_VERIFY_HPP_
#define TEPIR_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tepir/scheme.hpp"

namespace tepir {

struct Report {
  std::string check;
  nlohmann::json config;
  bool pass = false;
  nlohmann::json details;

  nlohmann::json to_json() const;
};

nlohmann::json config_json(const SchemeParams& params);

// Fresh files and seeds for every trial and every desired index.
Report verify_correctness(const Scheme& scheme, int trials, std::uint64_t seed,
                          Sabotage sabotage = Sabotage::kNone);

// Rank of the randomness map seen by every size-E tap set in every round.
Report verify_system_privacy(const Scheme& scheme, const Transcript& transcript);
// Same check over transcripts produced by `generate` for seed, seed+1, ...
Report verify_system_privacy(const Scheme& scheme,
                             const std::function<Transcript(std::uint64_t)>& generate,
                             std::uint64_t seed, int seeds);

// Column-selection preconditions on one generated instance: every user matrix is
// invertible and, for every collusion set and round, the code columns a
// coalition sees compose with the user matrix into a full-rank selection.
Report verify_user_privacy_structural(const Scheme& scheme, const UserState& user);

struct StatisticalOptions {
  long long samples = 10000;
  int projection_bits = 8;
  double tolerance = 0.05;
  std::uint64_t seed = 1;
  Sabotage sabotage = Sabotage::kNone;
};

// Compares, across desired indices, the law of a fixed public projection of
// the collusion view of `coalition` (0-based database indices).
Report verify_user_privacy_statistical(const Scheme& scheme, const std::vector<int>& coalition,
                                       const StatisticalOptions& options = {});

// Projection used above: per-file support sizes of the message coefficients
// plus a public random linear functional, hashed to `bits` bits.
std::uint64_t project_view(const Transcript& t, const std::vector<int>& coalition, int bits);

}  // namespace tepir

#endif  // TEPIR_VERIFY_HPP_
