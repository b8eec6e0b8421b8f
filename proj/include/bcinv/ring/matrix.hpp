#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "bcinv/error.hpp"
#include "bcinv/ring/field.hpp"

namespace bcinv {

/// Dense row-major matrix. Arithmetic goes through a field object so the same
/// storage serves F_p, Q and double.
template <class S>
class Matrix {
 public:
  using Scalar = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& fill = S{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      require(row.size() == cols_, ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<S>& data() const noexcept { return data_; }
  std::vector<S>& data() noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

namespace mat {

template <Field F>
using M = Matrix<typename F::Scalar>;

template <Field F>
M<F> zeros(const F& f, std::size_t r, std::size_t c) {
  return M<F>(r, c, f.zero());
}

template <Field F>
M<F> identity(const F& f, std::size_t n) {
  auto I = zeros(f, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = f.one();
  return I;
}

template <Field F>
M<F> unit(const F& f, std::size_t n, std::size_t i, std::size_t j) {
  auto E = zeros(f, n, n);
  E(i, j) = f.one();
  return E;
}

inline void check_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
  if (r1 != r2 || c1 != c2)
    fail(ErrorKind::DimensionMismatch, std::to_string(r1) + "x" + std::to_string(c1) + " vs " +
                                           std::to_string(r2) + "x" + std::to_string(c2));
}

template <Field F>
M<F> add(const F& f, const M<F>& A, const M<F>& B) {
  check_same_shape(A.rows(), A.cols(), B.rows(), B.cols());
  M<F> C(A.rows(), A.cols(), f.zero());
  for (std::size_t k = 0; k < A.data().size(); ++k) C.data()[k] = f.add(A.data()[k], B.data()[k]);
  return C;
}

template <Field F>
M<F> sub(const F& f, const M<F>& A, const M<F>& B) {
  check_same_shape(A.rows(), A.cols(), B.rows(), B.cols());
  M<F> C(A.rows(), A.cols(), f.zero());
  for (std::size_t k = 0; k < A.data().size(); ++k) C.data()[k] = f.sub(A.data()[k], B.data()[k]);
  return C;
}

template <Field F>
M<F> neg(const F& f, const M<F>& A) {
  M<F> C(A.rows(), A.cols(), f.zero());
  for (std::size_t k = 0; k < A.data().size(); ++k) C.data()[k] = f.neg(A.data()[k]);
  return C;
}

template <Field F>
M<F> scale(const F& f, const typename F::Scalar& s, const M<F>& A) {
  M<F> C(A.rows(), A.cols(), f.zero());
  for (std::size_t k = 0; k < A.data().size(); ++k) C.data()[k] = f.mul(s, A.data()[k]);
  return C;
}

template <Field F>
M<F> mul(const F& f, const M<F>& A, const M<F>& B) {
  if (A.cols() != B.rows())
    fail(ErrorKind::DimensionMismatch, "cannot multiply " + std::to_string(A.rows()) + "x" +
                                           std::to_string(A.cols()) + " by " + std::to_string(B.rows()) +
                                           "x" + std::to_string(B.cols()));
  M<F> C(A.rows(), B.cols(), f.zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      if (f.is_zero(A(i, k)) && F::exact) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = f.add(C(i, j), f.mul(A(i, k), B(k, j)));
    }
  return C;
}

template <class S>
Matrix<S> transpose(const Matrix<S>& A) {
  Matrix<S> T(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

template <class S>
Matrix<S> hstack(const Matrix<S>& A, const Matrix<S>& B) {
  require(A.rows() == B.rows(), ErrorKind::DimensionMismatch, "hstack row mismatch");
  Matrix<S> C(A.rows(), A.cols() + B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
    for (std::size_t j = 0; j < B.cols(); ++j) C(i, A.cols() + j) = B(i, j);
  }
  return C;
}

template <class S>
Matrix<S> vstack(const Matrix<S>& A, const Matrix<S>& B) {
  require(A.cols() == B.cols(), ErrorKind::DimensionMismatch, "vstack column mismatch");
  Matrix<S> C(A.rows() + B.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) C(A.rows() + i, j) = B(i, j);
  return C;
}

/// Column-stacking vectorisation: vec(A)[j*rows + i] = A(i, j).
template <class S>
Matrix<S> vec(const Matrix<S>& A) {
  Matrix<S> v(A.rows() * A.cols(), 1);
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) v(j * A.rows() + i, 0) = A(i, j);
  return v;
}

template <class S>
Matrix<S> unvec(const Matrix<S>& v, std::size_t rows, std::size_t cols) {
  require(v.rows() == rows * cols && v.cols() == 1, ErrorKind::DimensionMismatch, "unvec shape");
  Matrix<S> A(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) A(i, j) = v(j * rows + i, 0);
  return A;
}

/// Kronecker product A ⊗ B, so that vec(X W Y) = (Yᵀ ⊗ X) vec(W).
template <Field F>
M<F> kron(const F& f, const M<F>& A, const M<F>& B) {
  M<F> K(A.rows() * B.rows(), A.cols() * B.cols(), f.zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t k = 0; k < B.rows(); ++k)
        for (std::size_t l = 0; l < B.cols(); ++l) K(i * B.rows() + k, j * B.cols() + l) = f.mul(A(i, j), B(k, l));
  return K;
}

template <Field F>
M<F> columns(const M<F>& A, const std::vector<std::size_t>& idx) {
  M<F> C(A.rows(), idx.size());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) C(i, j) = A(i, idx[j]);
  return C;
}

template <Field F>
M<F> rows(const M<F>& A, const std::vector<std::size_t>& idx) {
  M<F> R(idx.size(), A.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) R(i, j) = A(idx[i], j);
  return R;
}

template <Field F>
double frobenius(const F& f, const M<F>& A) {
  double s = 0.0;
  for (const auto& x : A.data()) {
    const double m = f.magnitude(x);
    s += m * m;
  }
  return std::sqrt(s);
}

template <Field F>
bool is_zero(const F& f, const M<F>& A) {
  for (const auto& x : A.data())
    if (!f.is_zero(x)) return false;
  return true;
}

template <Field F>
std::string to_string(const F& f, const M<F>& A) {
  std::string s = "[";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) s += ",";
      s += f.to_string(A(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace mat
}  // namespace bcinv
