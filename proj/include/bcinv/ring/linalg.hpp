#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bcinv/ring/matrix.hpp"

namespace bcinv::linalg {

template <class S>
struct RankFactors {
  Matrix<S> left;   ///< m x r, full column rank
  Matrix<S> right;  ///< r x n, full row rank
  std::size_t rank = 0;
};

template <class S>
struct Echelon {
  Matrix<S> reduced;
  std::vector<std::size_t> pivots;
};

// ---------------------------------------------------------------------------
// Exact fields: Gauss-Jordan elimination.

template <ExactField F>
Echelon<typename F::Scalar> rref(const F& f, Matrix<typename F::Scalar> A) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols() && row < A.rows(); ++col) {
    std::size_t pick = row;
    while (pick < A.rows() && f.is_zero(A(pick, col))) ++pick;
    if (pick == A.rows()) continue;
    if (pick != row)
      for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(pick, j), A(row, j));
    const auto inv = f.inv(A(row, col));
    for (std::size_t j = 0; j < A.cols(); ++j) A(row, j) = f.mul(A(row, j), inv);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == row || f.is_zero(A(i, col))) continue;
      const auto factor = A(i, col);
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = f.sub(A(i, j), f.mul(factor, A(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(A), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const F& f, const Matrix<typename F::Scalar>& A) {
  return rref(f, A).pivots.size();
}

/// A = left * right with left = pivot columns of A and right = nonzero rows of rref(A).
template <ExactField F>
RankFactors<typename F::Scalar> rank_factorization(const F& f, const Matrix<typename F::Scalar>& A) {
  auto [R, pivots] = rref(f, A);
  const std::size_t r = pivots.size();
  std::vector<std::size_t> top(r);
  for (std::size_t i = 0; i < r; ++i) top[i] = i;
  return {mat::columns<F>(A, pivots), mat::rows<F>(R, top), r};
}

/// Columns form a basis of {x : A x = 0}.
template <ExactField F>
Matrix<typename F::Scalar> null_space(const F& f, const Matrix<typename F::Scalar>& A) {
  auto [R, pivots] = rref(f, A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  auto N = mat::zeros(f, A.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    N(free[k], k) = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) N(pivots[i], k) = f.neg(R(i, free[k]));
  }
  return N;
}

/// Some X with A X = B, or nothing when the system is inconsistent.
template <ExactField F>
std::optional<Matrix<typename F::Scalar>> solve(const F& f, const Matrix<typename F::Scalar>& A,
                                                const Matrix<typename F::Scalar>& B) {
  require(A.rows() == B.rows(), ErrorKind::DimensionMismatch, "solve: row mismatch");
  auto [R, pivots] = rref(f, mat::hstack(A, B));
  for (auto p : pivots)
    if (p >= A.cols()) return std::nullopt;
  auto X = mat::zeros(f, A.cols(), B.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) X(pivots[i], j) = R(i, A.cols() + j);
  return X;
}

template <ExactField F>
std::optional<Matrix<typename F::Scalar>> inverse(const F& f, const Matrix<typename F::Scalar>& A) {
  require(A.rows() == A.cols(), ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = A.rows();
  auto [R, pivots] = rref(f, mat::hstack(A, mat::identity(f, n)));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  std::vector<std::size_t> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
  return mat::columns<F>(R, right);
}

/// Left inverse L (L B = I) of a full-column-rank B. Over Q the least-squares
/// form (BᵀB)⁻¹Bᵀ; over F_p, where BᵀB may be singular, the inverse of an
/// independent row selection scattered back into place.
template <ExactField F>
Matrix<typename F::Scalar> left_inverse(const F& f, const Matrix<typename F::Scalar>& B) {
  const std::size_t r = B.cols();
  if (r == 0) return mat::zeros(f, 0, B.rows());
  if constexpr (std::is_same_v<F, RationalField>) {
    const auto Bt = mat::transpose(B);
    auto G = inverse(f, mat::mul(f, Bt, B));
    require(G.has_value(), ErrorKind::NotInvertible, "left_inverse: factor is not full column rank");
    return mat::mul(f, *G, Bt);
  } else {
    auto rows = rref(f, mat::transpose(B)).pivots;
    require(rows.size() == r, ErrorKind::NotInvertible, "left_inverse: factor is not full column rank");
    auto sub_inv = inverse(f, mat::rows<F>(B, rows));
    auto L = mat::zeros(f, r, B.rows());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) L(i, rows[k]) = (*sub_inv)(i, k);
    return L;
  }
}

template <ExactField F>
Matrix<typename F::Scalar> right_inverse(const F& f, const Matrix<typename F::Scalar>& C) {
  return mat::transpose(left_inverse(f, mat::transpose(C)));
}

// ---------------------------------------------------------------------------
// Floating point: SVD / orthogonal decompositions (see linalg_real.cpp).

std::size_t rank(const RealField& f, const Matrix<double>& A);
RankFactors<double> rank_factorization(const RealField& f, const Matrix<double>& A);
Matrix<double> null_space(const RealField& f, const Matrix<double>& A);
std::optional<Matrix<double>> solve(const RealField& f, const Matrix<double>& A, const Matrix<double>& B);
std::optional<Matrix<double>> inverse(const RealField& f, const Matrix<double>& A);
Matrix<double> left_inverse(const RealField& f, const Matrix<double>& B);
Matrix<double> right_inverse(const RealField& f, const Matrix<double>& C);

// ---------------------------------------------------------------------------
// Field-independent helpers built on the primitives above.

/// Basis of the column space.
template <Field F>
Matrix<typename F::Scalar> column_space(const F& f, const Matrix<typename F::Scalar>& A) {
  return rank_factorization(f, A).left;
}

/// Rows form a basis of the row space.
template <Field F>
Matrix<typename F::Scalar> row_space(const F& f, const Matrix<typename F::Scalar>& A) {
  return rank_factorization(f, A).right;
}

/// Rows form a basis of {x : x A = 0}.
template <Field F>
Matrix<typename F::Scalar> left_null_space(const F& f, const Matrix<typename F::Scalar>& A) {
  return mat::transpose(null_space(f, mat::transpose(A)));
}

/// Full-row-rank matrix whose null space is the column span of S.
template <Field F>
Matrix<typename F::Scalar> annihilator_rows(const F& f, const Matrix<typename F::Scalar>& S, std::size_t n) {
  if (S.cols() == 0) return mat::identity(f, n);
  return mat::transpose(null_space(f, mat::transpose(S)));
}

/// Do the column spans of U and V coincide?
template <Field F>
bool same_column_span(const F& f, const Matrix<typename F::Scalar>& U, const Matrix<typename F::Scalar>& V) {
  require(U.rows() == V.rows(), ErrorKind::DimensionMismatch, "subspaces of different ambient spaces");
  const std::size_t ru = U.cols() ? rank(f, U) : 0;
  const std::size_t rv = V.cols() ? rank(f, V) : 0;
  if (ru != rv) return false;
  return ru == 0 || rank(f, mat::hstack(U, V)) == ru;
}

/// Is the column span of U contained in that of V?
template <Field F>
bool column_span_within(const F& f, const Matrix<typename F::Scalar>& U, const Matrix<typename F::Scalar>& V) {
  if (U.cols() == 0) return true;
  if (V.cols() == 0) return rank(f, U) == 0;
  return rank(f, mat::hstack(U, V)) == rank(f, V);
}

}  // namespace bcinv::linalg
