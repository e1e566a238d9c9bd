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

#include "tepir/field.hpp"

#include <ostream>
#include <string>

namespace tepir {

Fp operator/(Fp a, Fp b) { return a * inv(b); }

Fp inv(Fp a) {
  if (a.is_literal()) {
    // Only the unit literals have a field-independent inverse.
    if (a.value() == 1) return a;
    throw Error(ErrorCode::kPreconditionViolation, "inverse of a field-less literal");
  }
  if (a.is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  // Extended Euclid on (q, a).
  std::int64_t r0 = static_cast<std::int64_t>(a.modulus());
  std::int64_t r1 = static_cast<std::int64_t>(a.value());
  std::int64_t t0 = 0;
  std::int64_t t1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::int64_t tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - quot * t1;
    t0 = t1;
    t1 = tmp;
  }
  return Fp(t0, a.modulus());
}

Fp pow(Fp a, std::uint64_t e) {
  Fp result = a.is_literal() ? Fp(1) : Fp(1, a.modulus());
  Fp base = a;
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, Fp a) {
  if (a.is_literal()) return os << static_cast<std::int64_t>(a.value());
  return os << a.value();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n | 1U;
  while (!is_prime(c)) c += 2;
  return c;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q > kMaxModulus) {
    throw Error(ErrorCode::kOutOfRange, "modulus " + std::to_string(q) + " exceeds 2^31 - 1");
  }
  if (!is_prime(q)) {
    throw Error(ErrorCode::kNonPrimeModulus, std::to_string(q) + " is not prime");
  }
}

}  // namespace tepir
