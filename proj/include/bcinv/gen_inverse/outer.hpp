#pragma once

#include "bcinv/gen_inverse/bc_inverse.hpp"

namespace bcinv {

/// a^{-(p,q)} for idempotents p, q: the (b,c)-inverse with b = g = p, c = h = q.
template <Ring R>
typename R::Elem bott_duffin_inverse(const R& r, const typename R::Elem& a, const typename R::Elem& p,
                                     const typename R::Elem& q, Method method = Method::Auto) {
  return bc_inverse(r, a, idempotent_frame(r, p, q), method);
}

/// Outer inverse with range T and null space S, both given by basis columns:
/// Y = B_T·(C_S·A·B_T)^{-1}·C_S where null(C_S) = S.
template <Field F>
Matrix<typename F::Scalar> ats_outer_inverse(const F& f, const Matrix<typename F::Scalar>& A,
                                             const Matrix<typename F::Scalar>& T,
                                             const Matrix<typename F::Scalar>& S) {
  const std::size_t n = A.rows();
  require(A.cols() == n && T.rows() == n && S.rows() == n, ErrorKind::DimensionMismatch,
          "A must be square and T, S subspaces of its domain");
  const auto basis_t = linalg::column_space(f, T);
  const std::size_t dim_s = S.cols() ? linalg::rank(f, S) : 0;
  require(basis_t.cols() + dim_s == n, ErrorKind::DimensionMismatch,
          "dim T + dim S = " + std::to_string(basis_t.cols() + dim_s) + " but the space has dimension " +
              std::to_string(n));
  if (basis_t.cols() == 0) return mat::zeros(f, n, n);
  const auto cs = linalg::annihilator_rows(f, S, n);
  const auto middle = mat::mul(f, mat::mul(f, cs, A), basis_t);
  const auto inv = linalg::inverse(f, middle);
  require(inv.has_value(), ErrorKind::InverseAbsent, "A(T) and S do not form a direct sum");
  return mat::mul(f, mat::mul(f, basis_t, *inv), cs);
}

namespace detail {

/// Search for the outer inverse y of a matching two ideal conditions.
template <EnumerableRing R>
typename R::Elem outer_by_ideals(const R& r, const typename R::Elem& a, IdealSide side1, const typename R::Elem& x1,
                                 IdealSide side2, const typename R::Elem& x2) {
  const auto target1 = ideal_set(r, x1, side1).members;
  const auto target2 = ideal_set(r, x2, side2).members;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto y = r.element(i);
    if (!r.equal(product(r, y, a, y), y)) continue;
    if (ideal_set(r, y, side1).members == target1 && ideal_set(r, y, side2).members == target2) return y;
  }
  fail(ErrorKind::InverseAbsent, "no outer inverse with the prescribed ideals");
}

/// Outer-inverse and subspace conditions re-checked on a matrix candidate.
template <MatrixAlgebra R>
void check_outer(const R& r, const typename R::Elem& a, const typename R::Elem& y, IdealSide side1,
                 const typename R::Elem& x1, IdealSide side2, const typename R::Elem& x2) {
  const double ny = r.norm(y);
  require(r.negligible(r.sub(product(r, y, a, y), y), ny * r.norm(a) * ny + ny), ErrorKind::InverseAbsent,
          "candidate is not an outer inverse");
  require(same_ideal(r, ideal_subspace(r, y, side1), ideal_subspace(r, x1, side1)), ErrorKind::InverseAbsent,
          std::string("candidate fails the ") + std::string(to_string(side1)) + " condition");
  require(same_ideal(r, ideal_subspace(r, y, side2), ideal_subspace(r, x2, side2)), ErrorKind::InverseAbsent,
          std::string("candidate fails the ") + std::string(to_string(side2)) + " condition");
}

}  // namespace detail

/// y = y·a·y, yR = bR, y^{-1}(0) = c^{-1}(0).
template <Ring R>
typename R::Elem hybrid_inverse(const R& r, const typename R::Elem& a, const typename R::Elem& b,
                                const typename R::Elem& c) {
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    const auto y = ats_outer_inverse(f, a, linalg::column_space(f, b), linalg::null_space(f, c));
    detail::check_outer(r, a, y, IdealSide::ImageRight, b, IdealSide::KernelRight, c);
    return y;
  } else {
    return detail::outer_by_ideals(r, a, IdealSide::ImageRight, b, IdealSide::KernelRight, c);
  }
}

/// y = y·a·y, y_{-1}(0) = b_{-1}(0), y^{-1}(0) = c^{-1}(0).
template <Ring R>
typename R::Elem annihilator_inverse(const R& r, const typename R::Elem& a, const typename R::Elem& b,
                                     const typename R::Elem& c) {
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    // range(y) is cut out by the left annihilator of b
    const auto range = linalg::null_space(f, linalg::left_null_space(f, b));
    const auto y = ats_outer_inverse(f, a, range, linalg::null_space(f, c));
    detail::check_outer(r, a, y, IdealSide::KernelLeft, b, IdealSide::KernelRight, c);
    return y;
  } else {
    return detail::outer_by_ideals(r, a, IdealSide::KernelLeft, b, IdealSide::KernelRight, c);
  }
}

/// (p,q,l)-outer inverse: y = y·a·y, yA = pA, y^{-1}(0) = qA.
template <Ring R>
typename R::Elem outer_inverse_pql(const R& r, const typename R::Elem& a, const typename R::Elem& p,
                                   const typename R::Elem& q) {
  require(is_idempotent(r, p), ErrorKind::PreconditionFailed, r.to_string(p) + " is not idempotent");
  require(is_idempotent(r, q), ErrorKind::PreconditionFailed, r.to_string(q) + " is not idempotent");
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    const auto y = ats_outer_inverse(f, a, linalg::column_space(f, p), linalg::column_space(f, q));
    detail::check_outer(r, a, y, IdealSide::ImageRight, p, IdealSide::KernelRight, complement(r, q));
    return y;
  } else {
    const auto target_image = ideal_set(r, p, IdealSide::ImageRight).members;
    const auto target_kernel = ideal_set(r, q, IdealSide::ImageRight).members;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto y = r.element(i);
      if (!r.equal(product(r, y, a, y), y)) continue;
      if (ideal_set(r, y, IdealSide::ImageRight).members == target_image &&
          ideal_set(r, y, IdealSide::KernelRight).members == target_kernel)
        return y;
    }
    fail(ErrorKind::InverseAbsent, "no (p,q,l)-outer inverse");
  }
}

}  // namespace bcinv
