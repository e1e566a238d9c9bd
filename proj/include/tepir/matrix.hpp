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

// Dense linear algebra over GF(q) on top of Eigen's storage and expression
// templates. Eigen's own decompositions pivot on magnitude, which has no
// meaning in a finite field, so elimination is done here with "first
// nonzero" pivoting.

#ifndef TEPIR_MATRIX_HPP_
#define TEPIR_MATRIX_HPP_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tepir/field.hpp"
#include "tepir/rng.hpp"

namespace tepir {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using RowVector = Eigen::Matrix<Fp, 1, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;

Matrix zeros(const PrimeField& field, Index rows, Index cols);
RowVector zero_row(const PrimeField& field, Index cols);
Matrix identity(const PrimeField& field, Index n);
Matrix random_matrix(const PrimeField& field, Index rows, Index cols, Rng& rng);
RowVector random_row(const PrimeField& field, Index cols, Rng& rng);

// Distinct 0-based column positions of a matrix with `cols` columns.
class ColumnSelection {
 public:
  ColumnSelection(std::vector<Index> indices, Index cols);

  // Columns [first, first + count).
  static ColumnSelection range(Index first, Index count, Index cols);

  const std::vector<Index>& indices() const noexcept { return indices_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }

 private:
  std::vector<Index> indices_;
};

template <typename Derived>
Matrix select_columns(const Eigen::MatrixBase<Derived>& m, const ColumnSelection& sel) {
  return m(Eigen::all, sel.indices());
}

// Entry (i, j) = points[j]^i for i < num_rows.
Matrix vandermonde(std::span<const Fp> points, Index num_rows);

// size x size Vandermonde matrix on the points 1, 2, ..., size.
Matrix master_matrix(const PrimeField& field, Index size);

// (top rows, remaining rows).
std::pair<Matrix, Matrix> split_rows(const Matrix& m, Index top_count);

// dim x length generator of an MDS code: Vandermonde rows on the points
// 1..length, so every dim-column submatrix is invertible.
Matrix mds_generator(Index dim, Index length, const PrimeField& field);

// Uniform element of GL(dim, q) by rejection sampling.
Matrix sample_invertible(Index dim, const PrimeField& field, Rng& rng);

namespace detail {

// In-place Gauss-Jordan reduction over the first `pivot_cols` columns; row
// operations are applied to the full width. Returns the rank found.
Index row_reduce(Matrix& a, Index pivot_cols);

Matrix multiply_impl(const Matrix& a, const Matrix& b);
Matrix invert_impl(Matrix m);
Matrix solve_impl(Matrix m, const Matrix& rhs);

}  // namespace detail

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  Matrix a = m;
  return detail::row_reduce(a, a.cols());
}

template <typename Derived>
bool is_invertible(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

// a * b with one modular reduction per output entry instead of one per
// term; same result as operator*, several times faster on large blocks.
template <typename D1, typename D2>
Matrix multiply(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) {
  return detail::multiply_impl(a, b);
}

// Throws SingularMatrix when m is not square and full rank.
template <typename Derived>
Matrix invert(const Eigen::MatrixBase<Derived>& m) {
  return detail::invert_impl(m);
}

// x with m * x = rhs, for square full-rank m.
template <typename D1, typename D2>
Matrix solve(const Eigen::MatrixBase<D1>& m, const Eigen::MatrixBase<D2>& rhs) {
  return detail::solve_impl(m, rhs);
}

}  // namespace tepir

#endif  // TEPIR_MATRIX_HPP_
