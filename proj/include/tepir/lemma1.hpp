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

// Distributional identity behind user privacy: for S uniform over
// GL(alpha, q), a fixed set I of beta distinct columns and a fixed invertible
// beta x beta matrix G', S[:, I] * G' has the same law as S[:, 0:beta].

#ifndef TEPIR_LEMMA1_HPP_
#define TEPIR_LEMMA1_HPP_

#include <cstdint>
#include <optional>

#include "tepir/matrix.hpp"

namespace tepir {

struct StatisticalReport {
  Index alpha = 0;
  Index beta = 0;
  std::uint64_t q = 0;
  long long trials = 1;
  // Number of histogram cells the outcomes were counted in.
  long long cells = 0;
  bool hashed = false;
  double tv = 0.0;
  // Expected TV between two empirical histograms of `trials` samples over
  // `cells` cells when the true laws agree (coupled samples, worst case).
  double noise_bound = 0.0;

  bool pass() const { return tv <= 3.0 * noise_bound; }
};

// Monte-Carlo comparison. S is resampled every trial and both sides are
// computed from the same draw. When `columns` / `mixer` are not given they
// are drawn once from `rng`.
StatisticalReport lemma1_harness(Index alpha, Index beta, long long trials,
                                 const PrimeField& field, Rng& rng,
                                 const std::optional<ColumnSelection>& columns = std::nullopt,
                                 const std::optional<Matrix>& mixer = std::nullopt);

struct ExactColumnLawReport {
  long long group_order = 0;       // |GL(alpha, q)|
  long long support = 0;           // distinct outcomes on the reference side
  long long tv_numerator = 0;      // TV * group_order
  double tv() const { return group_order ? double(tv_numerator) / double(group_order) : 0.0; }
};

// Exact comparison by enumerating every alpha x alpha matrix over GF(q);
// feasible for q^(alpha^2) up to about 2^21.
ExactColumnLawReport lemma1_exact(Index alpha, const PrimeField& field,
                               const ColumnSelection& columns, const Matrix& mixer);

}  // namespace tepir

#endif  // TEPIR_LEMMA1_HPP_
