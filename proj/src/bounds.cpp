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


#include "tepir/bounds.hpp"

#include "tepir/error.hpp"

namespace tepir {
namespace {

BigInt ipow(int base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_region(int n, int k, int t, int e) {
  if (k < 1) throw Error(ErrorCode::kInvalidParameters, "K must be at least 1");
  if (n < 1 || t < 1 || t > n) throw Error(ErrorCode::kInvalidParameters, "need 1 <= T <= N");
  if (e < 0) throw Error(ErrorCode::kInvalidParameters, "E must be nonnegative");
  if (e > t) {
    throw Error(ErrorCode::kInvalidParameters,
                "rate bounds are stated for E <= T; use the E >= T capacity instead");
  }
}

}  // namespace

Rational capacity_e_ge_t(int n, int e, const Rational& rho_available) {
  if (e < 0 || n < 1) throw Error(ErrorCode::kInvalidParameters, "need N >= 1 and E >= 0");
  if (e == 0) return 1;
  if (e >= n) throw Error(ErrorCode::kInvalidParameters, "E >= N leaves nothing to retrieve");
  if (rho_available >= Rational(e, n - e)) return 1 - Rational(e, n);
  return 0;
}

BigInt column_budget(int n, int k, int t) {
  BigInt j = 0;
  for (int i = 0; i < k; ++i) j += ipow(n, k - 1 - i) * ipow(t, i);
  return j;
}

Rational outer_bound(int n, int k, int t, int e) {
  check_region(n, k, t, e);
  const BigInt num = ipow(n, k) - BigInt(e) * ipow(t, k - 1);
  return Rational(num, BigInt(n) * column_budget(n, k, t));
}

Rational inner_bound(int n, int k, int t, int e) {
  check_region(n, k, t, e);
  const BigInt j = column_budget(n, k, t);
  return Rational(BigInt(k) * ipow(n, k) - BigInt(e) * j, BigInt(k) * n * j);
}

SecrecyBounds secrecy_bounds(int n, int k, int t, int e) {
  check_region(n, k, t, e);
  const BigInt j = column_budget(n, k, t);
  SecrecyBounds s;
  const BigInt lower_den = ipow(n, k) - BigInt(e) * ipow(t, k - 1);
  if (lower_den != 0) s.lower = Rational(BigInt(e) * j, lower_den);
  const BigInt achieved_den = BigInt(k) * ipow(n, k) - BigInt(e) * j;
  if (achieved_den != 0) s.achieved = Rational(BigInt(k) * e * j, achieved_den);
  return s;
}

BoundReport bound_report(int n, int k, int t, int e) {
  BoundReport r;
  r.n = n;
  r.k = k;
  r.t = t;
  r.e = e;
  r.outer_bound = outer_bound(n, k, t, e);
  r.inner_bound = inner_bound(n, k, t, e);
  r.gap = r.outer_bound - r.inner_bound;
  if (e == t && e < n) r.capacity_e_ge_t = 1 - Rational(e, n);
  const auto s = secrecy_bounds(n, k, t, e);
  r.secrecy_lower_bound = s.lower;
  r.achieved_secrecy = s.achieved;
  return r;
}

std::vector<SweepRow> sweep(int n, int k, SweepAxis axis, int fixed, int first, int last,
                            int step) {
  if (step < 1) throw Error(ErrorCode::kInvalidParameters, "sweep step must be positive");
  std::vector<SweepRow> rows;
  for (int v = first; v <= last; v += step) {
    const int t = axis == SweepAxis::kCollusion ? v : fixed;
    const int e = axis == SweepAxis::kCollusion ? fixed : v;
    rows.push_back({Rational(v, n), bound_report(n, k, t, e)});
  }
  return rows;
}

std::vector<SweepRow> figure_sweep(int figure, int k) {
  if (figure == 1) return sweep(10, k, SweepAxis::kCollusion, 3, 3, 10);
  if (figure == 2) return sweep(10, k, SweepAxis::kEavesdrop, 7, 0, 7);
  throw Error(ErrorCode::kInvalidParameters, "figure must be 1 or 2");
}

std::string figure_header(int figure) {
  if (figure == 1) return "t_over_n,outer,inner,gap";
  if (figure == 2) return "e_over_n,outer,inner,gap";
  throw Error(ErrorCode::kInvalidParameters, "figure must be 1 or 2");
}

std::string to_decimal(const Rational& r, int digits) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  const bool negative = r < 0;
  const Rational a = negative ? Rational(-r) : r;
  const BigInt scale = ipow(10, digits);
  const BigInt num = numerator(a) * scale;
  const BigInt den = denominator(a);
  BigInt scaled = num / den;
  if ((num % den) * 2 >= den) ++scaled;
  std::string out = (negative && scaled != 0 ? "-" : "") + BigInt(scaled / scale).str();
  if (digits > 0) {
    std::string frac = BigInt(scaled % scale).str();
    out += "." + std::string(digits - frac.size(), '0') + frac;
  }
  return out;
}

}  // namespace tepir
