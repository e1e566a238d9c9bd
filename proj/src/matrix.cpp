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

#include "tepir/matrix.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace tepir {

Matrix zeros(const PrimeField& field, Index rows, Index cols) {
  return Matrix::Constant(rows, cols, field.zero());
}

RowVector zero_row(const PrimeField& field, Index cols) {
  return RowVector::Constant(cols, field.zero());
}

Matrix identity(const PrimeField& field, Index n) {
  Matrix m = zeros(field, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix random_matrix(const PrimeField& field, Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = field.random(rng);
  return m;
}

RowVector random_row(const PrimeField& field, Index cols, Rng& rng) {
  RowVector v(cols);
  for (Index j = 0; j < cols; ++j) v(j) = field.random(rng);
  return v;
}

ColumnSelection::ColumnSelection(std::vector<Index> indices, Index cols)
    : indices_(std::move(indices)) {
  std::set<Index> seen;
  for (Index i : indices_) {
    if (i < 0 || i >= cols) {
      throw Error(ErrorCode::kOutOfRange, "column " + std::to_string(i) + " outside [0, " +
                                              std::to_string(cols) + ")");
    }
    if (!seen.insert(i).second) {
      throw Error(ErrorCode::kPreconditionViolation, "column " + std::to_string(i) + " repeated");
    }
  }
}

ColumnSelection ColumnSelection::range(Index first, Index count, Index cols) {
  std::vector<Index> idx(count);
  for (Index i = 0; i < count; ++i) idx[i] = first + i;
  return ColumnSelection(std::move(idx), cols);
}

Matrix vandermonde(std::span<const Fp> points, Index num_rows) {
  if (points.empty()) throw Error(ErrorCode::kPreconditionViolation, "no evaluation points");
  const std::uint64_t q = points.front().modulus();
  if (q == 0) throw Error(ErrorCode::kPreconditionViolation, "points carry no field");
  std::set<std::uint64_t> seen;
  for (const Fp& p : points) {
    if (p.modulus() != q) throw Error(ErrorCode::kPreconditionViolation, "points from different fields");
    if (p.is_zero()) throw Error(ErrorCode::kZeroPoint, "evaluation point 0");
    if (!seen.insert(p.value()).second) {
      throw Error(ErrorCode::kDuplicatePoint, "evaluation point " + std::to_string(p.value()));
    }
  }
  if (num_rows < 0 || static_cast<std::uint64_t>(num_rows) > q - 1) {
    throw Error(ErrorCode::kFieldTooSmall, "vandermonde with " + std::to_string(num_rows) +
                                               " rows over GF(" + std::to_string(q) + ")");
  }
  const auto cols = static_cast<Index>(points.size());
  Matrix m(num_rows, cols);
  for (Index j = 0; j < cols; ++j) {
    Fp power(1, q);
    for (Index i = 0; i < num_rows; ++i) {
      m(i, j) = power;
      power *= points[j];
    }
  }
  return m;
}

namespace {

std::vector<Fp> canonical_points(const PrimeField& field, Index count) {
  if (count < 0 || static_cast<std::uint64_t>(count) > field.size() - 1) {
    throw Error(ErrorCode::kFieldTooSmall, std::to_string(count) +
                                               " distinct nonzero points needed, GF(" +
                                               std::to_string(field.size()) + ") has " +
                                               std::to_string(field.size() - 1));
  }
  std::vector<Fp> points;
  points.reserve(count);
  for (Index i = 1; i <= count; ++i) points.push_back(field(i));
  return points;
}

}  // namespace

Matrix master_matrix(const PrimeField& field, Index size) {
  const auto points = canonical_points(field, size);
  return vandermonde(points, size);
}

std::pair<Matrix, Matrix> split_rows(const Matrix& m, Index top_count) {
  if (top_count < 0 || top_count > m.rows()) {
    throw Error(ErrorCode::kOutOfRange, "split at row " + std::to_string(top_count) + " of " +
                                            std::to_string(m.rows()));
  }
  return {m.topRows(top_count), m.bottomRows(m.rows() - top_count)};
}

Matrix mds_generator(Index dim, Index length, const PrimeField& field) {
  if (dim < 1 || dim > length) {
    throw Error(ErrorCode::kPreconditionViolation, "MDS dimension " + std::to_string(dim) +
                                                       " with length " + std::to_string(length));
  }
  const auto points = canonical_points(field, length);
  return vandermonde(points, dim);
}

Matrix sample_invertible(Index dim, const PrimeField& field, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::kPreconditionViolation, "dimension must be positive");
  for (;;) {
    Matrix m = random_matrix(field, dim, dim, rng);
    if (is_invertible(m)) return m;
  }
}

namespace detail {

namespace {

// Reduction on matrices whose entries are all untyped literals.
Index row_reduce_literal(Matrix& a, Index pivot_cols) {
  Index pivot_row = 0;
  for (Index c = 0; c < pivot_cols && pivot_row < a.rows(); ++c) {
    Index p = pivot_row;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != pivot_row) a.row(p).swap(a.row(pivot_row));
    const Fp scale = inv(a(pivot_row, c));
    a.row(pivot_row) *= scale;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == pivot_row || a(r, c).is_zero()) continue;
      const Fp f = a(r, c);
      a.row(r) -= f * a.row(pivot_row);
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

// Works on raw residues: one fused multiply-subtract and one reduction per
// entry, and only from the pivot column on (earlier entries of the pivot row
// are already zero).
Index row_reduce(Matrix& a, Index pivot_cols) {
  std::uint64_t q = 0;
  for (Index i = 0; i < a.size() && q == 0; ++i) q = a.data()[i].modulus();
  if (q == 0) return row_reduce_literal(a, pivot_cols);

  const Index rows = a.rows();
  const Index cols = a.cols();
  const Fp zero(0, q);
  std::vector<std::uint64_t> m(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m[i * cols + j] = (zero + a(i, j)).value();

  Index pivot_row = 0;
  for (Index c = 0; c < pivot_cols && pivot_row < rows; ++c) {
    Index p = pivot_row;
    while (p < rows && m[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    std::uint64_t* pr = &m[pivot_row * cols];
    if (p != pivot_row) std::swap_ranges(pr + c, pr + cols, &m[p * cols + c]);
    const std::uint64_t scale = inv(Fp(static_cast<std::int64_t>(pr[c]), q)).value();
    for (Index j = c; j < cols; ++j) pr[j] = pr[j] * scale % q;
    for (Index r = 0; r < rows; ++r) {
      std::uint64_t* row = &m[r * cols];
      if (r == pivot_row || row[c] == 0) continue;
      const std::uint64_t f = q - row[c];
      for (Index j = c; j < cols; ++j) row[j] = (row[j] + f * pr[j]) % q;
    }
    ++pivot_row;
  }
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = Fp(static_cast<std::int64_t>(m[i * cols + j]), q);
  return pivot_row;
}

Matrix multiply_impl(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "product shapes");
  std::uint64_t q = 0;
  for (Index i = 0; i < a.size() && q == 0; ++i) q = a.data()[i].modulus();
  for (Index i = 0; i < b.size() && q == 0; ++i) q = b.data()[i].modulus();
  if (q == 0) return a * b;

  const Fp zero(0, q);
  const Index inner = a.cols();
  const Index cols = b.cols();
  std::vector<std::uint64_t> bv(static_cast<std::size_t>(inner * cols));
  for (Index k = 0; k < inner; ++k)
    for (Index j = 0; j < cols; ++j) bv[k * cols + j] = (zero + b(k, j)).value();
  std::vector<unsigned __int128> acc(static_cast<std::size_t>(cols));
  Matrix out(a.rows(), cols);
  for (Index i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (Index k = 0; k < inner; ++k) {
      const std::uint64_t x = (zero + a(i, k)).value();
      if (x == 0) continue;
      const std::uint64_t* brow = &bv[k * cols];
      for (Index j = 0; j < cols; ++j) acc[j] += x * brow[j];
    }
    for (Index j = 0; j < cols; ++j) out(i, j) = Fp(static_cast<std::int64_t>(acc[j] % q), q);
  }
  return out;
}

Matrix invert_impl(Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kSingularMatrix, "non-square matrix");
  if (m.rows() == 0) return m;
  const Index n = m.rows();
  Matrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  // identity() needs a field; recover it from any typed entry.
  std::uint64_t q = 0;
  for (Index i = 0; i < m.size() && q == 0; ++i) q = m.data()[i].modulus();
  if (q == 0) throw Error(ErrorCode::kSingularMatrix, "matrix has no field entries");
  aug.rightCols(n) = identity(PrimeField(q), n);
  if (row_reduce(aug, n) != n) throw Error(ErrorCode::kSingularMatrix, "rank-deficient matrix");
  return aug.rightCols(n);
}

Matrix solve_impl(Matrix m, const Matrix& rhs) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kSingularMatrix, "non-square matrix");
  if (rhs.rows() != m.rows()) throw Error(ErrorCode::kDimensionMismatch, "rhs row count");
  const Index n = m.rows();
  Matrix aug(n, n + rhs.cols());
  aug.leftCols(n) = m;
  aug.rightCols(rhs.cols()) = rhs;
  if (row_reduce(aug, n) != n) throw Error(ErrorCode::kSingularMatrix, "rank-deficient matrix");
  return aug.rightCols(rhs.cols());
}

}  // namespace detail
}  // namespace tepir
