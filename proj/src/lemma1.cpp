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

#include "tepir/lemma1.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

namespace tepir {
namespace {

constexpr long long kMaxExactCells = 1024;
constexpr long long kHashCells = 1024;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  return x ^ (x >> 33);
}

// Base-q digits of the entries; exact while q^(rows*cols) < 2^64.
std::uint64_t encode(const Matrix& m, std::uint64_t q) {
  std::uint64_t code = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) code = code * q + m(i, j).value();
  return code;
}

std::uint64_t hash_cells(const Matrix& m) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) h = mix(h ^ (m(i, j).value() + 0x9e37U * (i * 131 + j)));
  return h % kHashCells;
}

// Count of alpha x beta matrices of full column rank.
double full_rank_count(Index alpha, Index beta, std::uint64_t q) {
  const double qa = std::pow(double(q), double(alpha));
  double n = 1.0;
  for (Index i = 0; i < beta; ++i) n *= qa - std::pow(double(q), double(i));
  return n;
}

}  // namespace

StatisticalReport lemma1_harness(Index alpha, Index beta, long long trials,
                                 const PrimeField& field, Rng& rng,
                                 const std::optional<ColumnSelection>& columns,
                                 const std::optional<Matrix>& mixer) {
  if (beta < 1 || beta > alpha) {
    throw Error(ErrorCode::kPreconditionViolation, "need 1 <= beta <= alpha");
  }
  if (trials < 1) throw Error(ErrorCode::kPreconditionViolation, "need trials >= 1");

  ColumnSelection sel = columns.value_or([&] {
    const auto perm = random_permutation(rng, static_cast<int>(alpha));
    std::vector<Index> idx(perm.begin(), perm.begin() + beta);
    return ColumnSelection(std::move(idx), alpha);
  }());
  if (sel.size() != beta) throw Error(ErrorCode::kDimensionMismatch, "column set size != beta");
  const Matrix g = mixer ? *mixer : sample_invertible(beta, field, rng);
  if (g.rows() != beta || g.cols() != beta) {
    throw Error(ErrorCode::kDimensionMismatch, "mixer must be beta x beta");
  }

  StatisticalReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.q = field.modulus();
  report.trials = trials;

  const double support = full_rank_count(alpha, beta, field.modulus());
  report.hashed = support > double(kMaxExactCells);
  report.cells = report.hashed ? kHashCells : static_cast<long long>(support);
  const auto reference = ColumnSelection::range(0, beta, alpha);

  std::unordered_map<std::uint64_t, long long> left;
  std::unordered_map<std::uint64_t, long long> right;
  for (long long t = 0; t < trials; ++t) {
    const Matrix s = sample_invertible(alpha, field, rng);
    const Matrix lhs = select_columns(s, sel) * g;
    const Matrix rhs = select_columns(s, reference);
    if (report.hashed) {
      ++left[hash_cells(lhs)];
      ++right[hash_cells(rhs)];
    } else {
      ++left[encode(lhs, field.modulus())];
      ++right[encode(rhs, field.modulus())];
    }
  }

  long long diff = 0;
  for (const auto& [cell, c] : left) {
    const auto it = right.find(cell);
    diff += std::llabs(c - (it == right.end() ? 0 : it->second));
  }
  for (const auto& [cell, c] : right) {
    if (!left.contains(cell)) diff += c;
  }
  report.tv = 0.5 * double(diff) / double(trials);
  report.noise_bound =
      std::sqrt(2.0 * double(report.cells) / (std::numbers::pi * double(trials)));
  return report;
}

ExactColumnLawReport lemma1_exact(Index alpha, const PrimeField& field,
                               const ColumnSelection& columns, const Matrix& mixer) {
  const Index beta = columns.size();
  const std::uint64_t q = field.modulus();
  if (mixer.rows() != beta || mixer.cols() != beta) {
    throw Error(ErrorCode::kDimensionMismatch, "mixer must be beta x beta");
  }
  const double space = std::pow(double(q), double(alpha * alpha));
  if (space > double(1 << 21)) {
    throw Error(ErrorCode::kPreconditionViolation,
                "exact enumeration of " + std::to_string(space) + " matrices refused");
  }
  const auto total = static_cast<std::uint64_t>(space);
  const auto reference = ColumnSelection::range(0, beta, alpha);

  ExactColumnLawReport report;
  std::unordered_map<std::uint64_t, long long> left;
  std::unordered_map<std::uint64_t, long long> right;
  Matrix s(alpha, alpha);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (Index i = 0; i < alpha; ++i)
      for (Index j = 0; j < alpha; ++j) {
        s(i, j) = field(static_cast<std::int64_t>(c % q));
        c /= q;
      }
    if (!is_invertible(s)) continue;
    ++report.group_order;
    ++left[encode(select_columns(s, columns) * mixer, q)];
    ++right[encode(select_columns(s, reference), q)];
  }
  long long diff = 0;
  for (const auto& [cell, c] : left) {
    const auto it = right.find(cell);
    diff += std::llabs(c - (it == right.end() ? 0 : it->second));
  }
  for (const auto& [cell, c] : right) {
    if (!left.contains(cell)) diff += c;
  }
  report.support = static_cast<long long>(right.size());
  // diff is even when both sides have the same total mass.
  report.tv_numerator = diff / 2;
  return report;
}

}  // namespace tepir
