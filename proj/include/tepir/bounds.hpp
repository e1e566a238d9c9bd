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


// Closed-form rate and secrecy bounds, evaluated exactly. Everything is
// rewritten over the integers with J = sum_{i<K} N^(K-1-i) T^i, which also
// covers T = N (J = K N^(K-1)) without a 0/0.

#ifndef TEPIR_BOUNDS_HPP_
#define TEPIR_BOUNDS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "tepir/rational.hpp"

namespace tepir {

// Capacity when E >= T: 1 - E/N if the shared randomness ratio reaches
// E / (N - E), otherwise 0.
Rational capacity_e_ge_t(int n, int e, const Rational& rho_available);

// Require 1 <= T <= N, 0 <= E <= T, K >= 1; InvalidParameters otherwise.
Rational outer_bound(int n, int k, int t, int e);
Rational inner_bound(int n, int k, int t, int e);

struct SecrecyBounds {
  // Undefined (0/0 in the closed forms) only at E = T = N.
  std::optional<Rational> lower;
  std::optional<Rational> achieved;  // K E J / L of the scheme
};
SecrecyBounds secrecy_bounds(int n, int k, int t, int e);

// J for (N, K, T) as an exact integer.
BigInt column_budget(int n, int k, int t);

struct BoundReport {
  int n = 0;
  int k = 0;
  int t = 0;
  int e = 0;
  std::optional<Rational> capacity_e_ge_t;  // present on the E = T edge
  Rational outer_bound;
  Rational inner_bound;
  std::optional<Rational> secrecy_lower_bound;
  std::optional<Rational> achieved_secrecy;
  Rational gap;  // outer - inner
};

BoundReport bound_report(int n, int k, int t, int e);

enum class SweepAxis { kCollusion, kEavesdrop };  // varying T or varying E

struct SweepRow {
  Rational x;  // T/N or E/N
  BoundReport report;
};

// Varies T (axis kCollusion, E = fixed) or E (axis kEavesdrop, T = fixed)
// over first, first + step, ..., not beyond last.
std::vector<SweepRow> sweep(int n, int k, SweepAxis axis, int fixed, int first, int last,
                            int step = 1);

// Figure families: 1 -> N = 10, E = 3, T = 3..10; 2 -> N = 10, T = 7, E = 0..7.
std::vector<SweepRow> figure_sweep(int figure, int k);
std::string figure_header(int figure);

// Round-half-up decimal expansion with exactly `digits` fractional digits.
std::string to_decimal(const Rational& r, int digits = 12);

}  // namespace tepir

#endif  // TEPIR_BOUNDS_HPP_
