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

#ifndef TEPIR_RNG_HPP_
#define TEPIR_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tepir {

// mt19937_64 output is fixed by the standard; the helpers below avoid the
// implementation-defined standard distributions so transcripts are
// reproducible across toolchains.
using Rng = std::mt19937_64;

// Independent stream for `label` derived from a master seed.
Rng make_stream(std::uint64_t master_seed, std::string_view label);

// Uniform integer in [0, bound), bound > 0, by rejection.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform permutation of [0, n) (Fisher-Yates).
std::vector<int> random_permutation(Rng& rng, int n);

std::vector<int> invert_permutation(const std::vector<int>& perm);

// The three per-session streams used by a retrieval session.
struct SessionSeeds {
  std::uint64_t user = 0;
  std::uint64_t common = 0;
  std::uint64_t message = 0;

  static SessionSeeds from_master(std::uint64_t master_seed);
};

}  // namespace tepir

#endif  // TEPIR_RNG_HPP_
