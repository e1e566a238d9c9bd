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

// Prime-field arithmetic. `Fp` is an Eigen-compatible scalar: it carries
// its modulus, so dense Eigen matrices of `Fp` multiply and add exactly.
//
// Eigen builds constants through `Scalar(0)` and `Scalar(1)` without knowing
// the field; such values are "literals" (modulus 0) and adopt the modulus of
// the first field element they are combined with.

#ifndef TEPIR_FIELD_HPP_
#define TEPIR_FIELD_HPP_

#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

#include "tepir/error.hpp"
#include "tepir/rng.hpp"

namespace tepir {

// Largest admissible modulus bound: products of two reduced values must fit
// in 64 bits.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

class Fp {
 public:
  constexpr Fp() noexcept = default;
  // Implicit on purpose: Eigen writes Scalar(0), Scalar(1), Scalar(-1).
  constexpr Fp(int literal) noexcept : value_(literal) {}  // NOLINT
  Fp(std::int64_t value, std::uint64_t modulus) noexcept
      : value_(reduce(value, modulus)), modulus_(modulus) {}

  // Reduced representative in [0, q-1]. Literals report their raw value.
  std::uint64_t value() const noexcept { return static_cast<std::uint64_t>(value_); }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_literal() const noexcept { return modulus_ == 0; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend Fp operator+(Fp a, Fp b) noexcept {
    const std::uint64_t q = common(a, b);
    if (q == 0) return literal(a.value_ + b.value_);
    return typed((a.rep(q) + b.rep(q)) % q, q);
  }
  friend Fp operator-(Fp a, Fp b) noexcept {
    const std::uint64_t q = common(a, b);
    if (q == 0) return literal(a.value_ - b.value_);
    return typed((a.rep(q) + q - b.rep(q)) % q, q);
  }
  friend Fp operator*(Fp a, Fp b) noexcept {
    const std::uint64_t q = common(a, b);
    if (q == 0) return literal(a.value_ * b.value_);
    return typed((a.rep(q) * b.rep(q)) % q, q);
  }
  friend Fp operator/(Fp a, Fp b);
  Fp operator-() const noexcept {
    if (modulus_ == 0) return literal(-value_);
    return typed((modulus_ - rep(modulus_)) % modulus_, modulus_);
  }
  Fp& operator+=(Fp o) noexcept { return *this = *this + o; }
  Fp& operator-=(Fp o) noexcept { return *this = *this - o; }
  Fp& operator*=(Fp o) noexcept { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }

  friend bool operator==(Fp a, Fp b) noexcept {
    const std::uint64_t q = common(a, b);
    if (q == 0) return a.value_ == b.value_;
    return a.rep(q) == b.rep(q);
  }

 private:
  static std::int64_t reduce(std::int64_t v, std::uint64_t q) noexcept {
    if (q == 0) return v;
    const auto m = static_cast<std::int64_t>(q);
    v %= m;
    return v < 0 ? v + m : v;
  }
  static std::uint64_t common(Fp a, Fp b) noexcept {
    return a.modulus_ != 0 ? a.modulus_ : b.modulus_;
  }
  static Fp literal(std::int64_t v) noexcept {
    Fp r;
    r.value_ = v;
    return r;
  }
  static Fp typed(std::uint64_t v, std::uint64_t q) noexcept {
    Fp r;
    r.value_ = static_cast<std::int64_t>(v);
    r.modulus_ = q;
    return r;
  }
  std::uint64_t rep(std::uint64_t q) const noexcept {
    return static_cast<std::uint64_t>(modulus_ == 0 ? reduce(value_, q) : value_);
  }

  std::int64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

// Multiplicative inverse; throws DivisionByZero for zero.
Fp inv(Fp a);

// a^e with pow(a, 0) = 1 (including 0^0).
Fp pow(Fp a, std::uint64_t e);

std::ostream& operator<<(std::ostream& os, Fp a);

bool is_prime(std::uint64_t n);

// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

// GF(q) for prime q < 2^31. Immutable; safe to share across threads.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t size() const noexcept { return q_; }

  Fp operator()(std::int64_t value) const noexcept { return Fp(value, q_); }
  Fp zero() const noexcept { return Fp(0, q_); }
  Fp one() const noexcept { return Fp(1, q_); }
  Fp random(Rng& rng) const { return Fp(static_cast<std::int64_t>(uniform_below(rng, q_)), q_); }
  Fp random_nonzero(Rng& rng) const {
    return Fp(static_cast<std::int64_t>(1 + uniform_below(rng, q_ - 1)), q_);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
    return a.q_ == b.q_;
  }

 private:
  std::uint64_t q_;
};

inline PrimeField field_new(std::uint64_t q) { return PrimeField(q); }

}  // namespace tepir

namespace Eigen {

template <>
struct NumTraits<tepir::Fp> : GenericNumTraits<tepir::Fp> {
  using Real = tepir::Fp;
  using NonInteger = tepir::Fp;
  using Literal = tepir::Fp;
  using Nested = tepir::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4,
  };
};

}  // namespace Eigen

#endif  // TEPIR_FIELD_HPP_
