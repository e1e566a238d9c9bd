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


// Reference computations for the tests. These deliberately share no code
// with the library: plain integer elimination, literal bound formulas in
// x = T/N, brute-force enumerations.

#ifndef TEPIR_TESTS_ORACLES_HPP_
#define TEPIR_TESTS_ORACLES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "tepir/matrix.hpp"
#include "tepir/rational.hpp"

namespace oracle {

using IntMatrix = std::vector<std::vector<long long>>;

inline long long mod(long long a, long long q) {
  a %= q;
  return a < 0 ? a + q : a;
}

inline long long pow_mod(long long b, long long e, long long q) {
  long long r = 1 % q;
  b = mod(b, q);
  while (e > 0) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

// Inverse by Fermat; q prime.
inline long long inv_mod(long long a, long long q) { return pow_mod(a, q - 2, q); }

inline IntMatrix to_ints(const tepir::Matrix& m) {
  IntMatrix out(m.rows(), std::vector<long long>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = static_cast<long long>(m(i, j).value());
  return out;
}

// Row echelon with partial "any nonzero" pivoting on plain integers.
inline int rank_mod(IntMatrix a, long long q) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (mod(a[i][c], q) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    const long long iv = inv_mod(mod(a[r][c], q), q);
    for (int i = r + 1; i < rows; ++i) {
      const long long f = mod(a[i][c], q) * iv % q;
      if (!f) continue;
      for (int j = c; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], q);
    }
    ++r;
  }
  return r;
}

inline IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, long long q) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  IntMatrix c(n, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < m; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % q;
  return c;
}

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Every `size`-subset of [0, n) in lexicographic order.
inline std::vector<std::vector<int>> choose(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(size);
  for (int i = 0; i < size; ++i) cur[i] = i;
  if (size > n) return out;
  for (;;) {
    out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[i] == n - size + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < size; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Literal closed forms with x = T/N and y = E/N (require T < N).
inline tepir::Rational rpow(const tepir::Rational& x, int e) {
  tepir::Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline tepir::Rational literal_outer(int n, int k, int t, int e) {
  const tepir::Rational x(t, n), y(e, n);
  return (1 - x) * (1 - y * rpow(x, k - 1)) / (1 - rpow(x, k));
}

inline tepir::Rational literal_inner(int n, int k, int t, int e) {
  const tepir::Rational x(t, n);
  return (1 - x) / (1 - rpow(x, k)) - tepir::Rational(e, k * n);
}

inline tepir::Rational literal_secrecy_lower(int n, int k, int t, int e) {
  const tepir::Rational x(t, n), y(e, n);
  return y * (1 - rpow(x, k)) / ((1 - x) * (1 - y * rpow(x, k - 1)));
}

inline tepir::Rational literal_secrecy_achieved(int n, int k, int t, int e) {
  const tepir::Rational x(t, n), y(e, n);
  return y * (1 - rpow(x, k)) / (1 - x - tepir::Rational(e, k * n) * (1 - rpow(x, k)));
}

// (N^K - T^K) / (N - T) by the closed form, T < N.
inline long long geometric_j(long long n, int k, long long t) {
  long long nk = 1, tk = 1;
  for (int i = 0; i < k; ++i) {
    nk *= n;
    tk *= t;
  }
  return (nk - tk) / (n - t);
}

}  // namespace oracle

#endif  // TEPIR_TESTS_ORACLES_HPP_
