#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include "bcinv/ring/concepts.hpp"
#include "bcinv/ring/linalg.hpp"

namespace bcinv {

/// Largest M_k(F_p) that may be listed element by element.
inline constexpr std::size_t kMatrixEnumerationLimit = std::size_t{1} << 20;

/// The full matrix algebra M_k(F).
template <Field F>
class MatrixRing {
 public:
  using FieldType = F;
  using Scalar = typename F::Scalar;
  using Elem = Matrix<Scalar>;

  MatrixRing(F field, std::size_t k) : field_(std::move(field)), k_(k) {
    require(k >= 1, ErrorKind::PreconditionFailed, "matrix dimension must be at least 1");
  }

  const F& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return k_; }

  Elem zero() const { return mat::zeros(field_, k_, k_); }
  Elem one() const { return mat::identity(field_, k_); }
  Elem unit(std::size_t i, std::size_t j) const { return mat::unit(field_, k_, i, j); }

  Elem add(const Elem& x, const Elem& y) const { return mat::add(field_, check(x), check(y)); }
  Elem sub(const Elem& x, const Elem& y) const { return mat::sub(field_, check(x), check(y)); }
  Elem mul(const Elem& x, const Elem& y) const { return mat::mul(field_, check(x), check(y)); }
  Elem neg(const Elem& x) const { return mat::neg(field_, check(x)); }
  Elem scale(const Scalar& s, const Elem& x) const { return mat::scale(field_, s, check(x)); }
  Elem transpose(const Elem& x) const { return mat::transpose(x); }

  double norm(const Elem& x) const { return mat::frobenius(field_, x); }

  /// Exact backends compare entrywise; floats normwise relative with an absolute floor.
  bool equal(const Elem& x, const Elem& y) const {
    if constexpr (F::exact) {
      return check(x) == check(y);
    } else {
      const double d = norm(sub(x, y));
      return d <= field_.equality_tol * std::max({1.0, norm(x), norm(y)});
    }
  }

  /// Residual test used by verifications: exact zero, or at most
  /// verdict_tol * (1 + scale) on floats.
  bool negligible(const Elem& residual, double scale) const {
    if constexpr (F::exact) {
      return mat::is_zero(field_, residual);
    } else {
      return norm(residual) <= field_.verdict_tol * (1.0 + scale);
    }
  }

  std::string to_string(const Elem& x) const { return mat::to_string(field_, x); }

  std::size_t rank(const Elem& x) const { return linalg::rank(field_, x); }

  bool enumerable() const {
    if constexpr (std::is_same_v<F, PrimeField>) {
      return count_elements() <= kMatrixEnumerationLimit;
    } else {
      return false;
    }
  }

  std::size_t size() const {
    require(enumerable(), ErrorKind::CapExceeded, "matrix ring too large (or infinite) to enumerate");
    return count_elements();
  }

  /// Enumeration order is lexicographic in the row-major entry sequence.
  Elem element(std::size_t i) const {
    if constexpr (std::is_same_v<F, PrimeField>) {
      require(i < size(), ErrorKind::PreconditionFailed, "element index out of range");
      Elem x = zero();
      for (std::size_t pos = k_ * k_; pos-- > 0;) {
        x.data()[pos] = static_cast<Scalar>(i % field_.p);
        i /= field_.p;
      }
      return x;
    } else {
      fail(ErrorKind::MethodUnavailable, "only matrices over a prime field can be enumerated");
    }
  }

  std::size_t index(const Elem& x) const {
    if constexpr (std::is_same_v<F, PrimeField>) {
      std::size_t i = 0;
      for (auto s : check(x).data()) i = i * field_.p + (s % field_.p);
      return i;
    } else {
      fail(ErrorKind::MethodUnavailable, "only matrices over a prime field can be enumerated");
    }
  }

  bool operator==(const MatrixRing&) const = default;

 private:
  const Elem& check(const Elem& x) const {
    if (x.rows() != k_ || x.cols() != k_)
      fail(ErrorKind::DimensionMismatch, "expected a " + std::to_string(k_) + "x" + std::to_string(k_) +
                                             " matrix, got " + std::to_string(x.rows()) + "x" +
                                             std::to_string(x.cols()));
    return x;
  }

  std::size_t count_elements() const {
    if constexpr (std::is_same_v<F, PrimeField>) {
      std::size_t n = 1;
      for (std::size_t e = 0; e < k_ * k_; ++e) {
        if (n > kMatrixEnumerationLimit) return kMatrixEnumerationLimit + 1;
        n *= field_.p;
      }
      return n;
    } else {
      return 0;
    }
  }

  F field_;
  std::size_t k_;
};

using PrimeMatrixRing = MatrixRing<PrimeField>;
using RationalMatrixRing = MatrixRing<RationalField>;
using RealMatrixRing = MatrixRing<RealField>;

}  // namespace bcinv
