#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcinv/ring/concepts.hpp"
#include "bcinv/ring/matrix_ring.hpp"

namespace bcinv {

// ---------------------------------------------------------------------------
// Small algebraic predicates shared by every backend.

template <Ring R>
bool is_idempotent(const R& r, const typename R::Elem& x) {
  return r.negligible(r.sub(r.mul(x, x), x), r.norm(x) * r.norm(x) + r.norm(x));
}

/// Scale-aware agreement of two computed elements (exact equality on exact backends).
template <Ring R>
bool agree(const R& r, const typename R::Elem& x, const typename R::Elem& y) {
  return r.negligible(r.sub(x, y), r.norm(x) + r.norm(y));
}

template <Ring R>
typename R::Elem complement(const R& r, const typename R::Elem& p) {
  return r.sub(r.one(), p);
}

template <Ring R>
bool is_unit(const R& r, const typename R::Elem& x) {
  if constexpr (MatrixAlgebra<R>) {
    return r.rank(x) == r.dim();
  } else {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto y = r.element(i);
      if (r.equal(r.mul(x, y), r.one()) && r.equal(r.mul(y, x), r.one())) return true;
    }
    return false;
  }
}

template <Ring R>
typename R::Elem invert(const R& r, const typename R::Elem& x) {
  if constexpr (MatrixAlgebra<R>) {
    auto inv = linalg::inverse(r.field(), x);
    require(inv.has_value(), ErrorKind::NotInvertible, r.to_string(x) + " is singular");
    return *inv;
  } else {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto y = r.element(i);
      if (r.equal(r.mul(x, y), r.one()) && r.equal(r.mul(y, x), r.one())) return y;
    }
    fail(ErrorKind::NotInvertible, r.to_string(x) + " is not a unit");
  }
}

/// Does a right inverse exist (x R = R)?
template <Ring R>
bool is_right_invertible(const R& r, const typename R::Elem& x) {
  if constexpr (MatrixAlgebra<R>) {
    return r.rank(x) == r.dim();
  } else {
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r.equal(r.mul(x, r.element(i)), r.one())) return true;
    return false;
  }
}

/// Does a left inverse exist (R x = R)?
template <Ring R>
bool is_left_invertible(const R& r, const typename R::Elem& x) {
  if constexpr (MatrixAlgebra<R>) {
    return r.rank(x) == r.dim();
  } else {
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r.equal(r.mul(r.element(i), x), r.one())) return true;
    return false;
  }
}

template <Ring R>
bool is_inner_inverse(const R& r, const typename R::Elem& b, const typename R::Elem& g) {
  const auto nb = r.norm(b);
  return r.negligible(r.sub(product(r, b, g, b), b), nb * r.norm(g) * nb + nb);
}

// ---------------------------------------------------------------------------
// Matrix factorisations.

template <MatrixAlgebra R>
linalg::RankFactors<typename R::Scalar> rank_factorization(const R& r, const typename R::Elem& A) {
  return linalg::rank_factorization(r.field(), A);
}

/// Canonical inner inverse. Matrices: g = Cᴿ·Bᴸ from b = B·C. Enumerable
/// rings: the first inner inverse in enumeration order.
template <Ring R>
typename R::Elem canonical_inner_inverse(const R& r, const typename R::Elem& b) {
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    const auto rf = linalg::rank_factorization(f, b);
    if (rf.rank == 0) return r.zero();
    return mat::mul(f, linalg::right_inverse(f, rf.right), linalg::left_inverse(f, rf.left));
  } else {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto g = r.element(i);
      if (r.equal(product(r, b, g, b), b)) return g;
    }
    fail(ErrorKind::NotRegular, r.to_string(b) + " has no inner inverse");
  }
}

/// b{1}: the full set on enumerable backends, the canonical choice otherwise.
template <Ring R>
std::vector<typename R::Elem> inner_inverses(const R& r, const typename R::Elem& b) {
  std::vector<typename R::Elem> out;
  bool listable = false;
  if constexpr (EnumerableRing<R>) listable = r.enumerable();
  if (listable) {
    if constexpr (EnumerableRing<R>) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        const auto g = r.element(i);
        if (r.equal(product(r, b, g, b), b)) out.push_back(g);
      }
    }
    require(!out.empty(), ErrorKind::NotRegular, r.to_string(b) + " has no inner inverse");
  } else {
    out.push_back(canonical_inner_inverse(r, b));
  }
  return out;
}

/// w' = w·b·w, simultaneously an inner and an outer inverse of b.
template <Ring R>
typename R::Elem normalized_inner_inverse(const R& r, const typename R::Elem& b, const typename R::Elem& w) {
  require(is_inner_inverse(r, b, w), ErrorKind::PreconditionFailed,
          r.to_string(w) + " is not an inner inverse of " + r.to_string(b));
  return product(r, w, b, w);
}

// ---------------------------------------------------------------------------
// Image and kernel ideals.

enum class IdealSide {
  ImageRight,   ///< xR
  ImageLeft,    ///< Rx
  KernelRight,  ///< x^{-1}(0) = { y : x y = 0 }
  KernelLeft,   ///< x_{-1}(0) = { y : y x = 0 }
};

inline std::string_view to_string(IdealSide side) noexcept;

template <class Elem>
struct IdealSet {
  IdealSide side;
  std::vector<Elem> members;  ///< sorted by enumeration index

  bool contains(const Elem& x) const {
    for (const auto& m : members)
      if (m == x) return true;
    return false;
  }
};

/// Matrix ideals as subspaces of F^k. Right ideals (xR, x^{-1}(0)) are column
/// conditions on members, left ideals (Rx, x_{-1}(0)) row conditions; either
/// way the basis is stored as columns.
template <class S>
struct IdealSubspace {
  IdealSide side;
  Matrix<S> basis;
};

template <class Elem, class S>
using IdealRepresentation = std::variant<IdealSet<Elem>, IdealSubspace<S>>;

inline bool is_right_ideal(IdealSide side) {
  return side == IdealSide::ImageRight || side == IdealSide::KernelRight;
}

template <EnumerableRing R>
IdealSet<typename R::Elem> ideal_set(const R& r, const typename R::Elem& x, IdealSide side) {
  std::vector<bool> seen(r.size(), false);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto y = r.element(i);
    switch (side) {
      case IdealSide::ImageRight: seen[r.index(r.mul(x, y))] = true; break;
      case IdealSide::ImageLeft: seen[r.index(r.mul(y, x))] = true; break;
      case IdealSide::KernelRight: if (r.equal(r.mul(x, y), r.zero())) seen[i] = true; break;
      case IdealSide::KernelLeft: if (r.equal(r.mul(y, x), r.zero())) seen[i] = true; break;
    }
  }
  IdealSet<typename R::Elem> out{side, {}};
  for (std::size_t i = 0; i < r.size(); ++i)
    if (seen[i]) out.members.push_back(r.element(i));
  return out;
}

template <MatrixAlgebra R>
IdealSubspace<typename R::Scalar> ideal_subspace(const R& r, const typename R::Elem& x, IdealSide side) {
  const auto& f = r.field();
  switch (side) {
    case IdealSide::ImageRight: return {side, linalg::column_space(f, x)};
    case IdealSide::ImageLeft: return {side, mat::transpose(linalg::row_space(f, x))};
    case IdealSide::KernelRight: return {side, linalg::null_space(f, x)};
    case IdealSide::KernelLeft: return {side, mat::transpose(linalg::left_null_space(f, x))};
  }
  fail(ErrorKind::PreconditionFailed, "unknown ideal side");
}

/// Membership of a ring element in a subspace-realised ideal.
template <MatrixAlgebra R>
bool ideal_contains(const R& r, const IdealSubspace<typename R::Scalar>& ideal, const typename R::Elem& m) {
  const auto& f = r.field();
  const auto& vectors = is_right_ideal(ideal.side) ? m : mat::transpose(m);
  return linalg::column_span_within(f, vectors, ideal.basis);
}

template <MatrixAlgebra R>
bool same_ideal(const R& r, const IdealSubspace<typename R::Scalar>& x, const IdealSubspace<typename R::Scalar>& y) {
  return x.side == y.side && linalg::same_column_span(r.field(), x.basis, y.basis);
}

/// Matrix algebras answer with a subspace, other finite rings with the element set.
template <Ring R>
auto ideal(const R& r, const typename R::Elem& x, IdealSide side) {
  if constexpr (MatrixAlgebra<R>) {
    return ideal_subspace(r, x, side);
  } else {
    return ideal_set(r, x, side);
  }
}

inline std::string_view to_string(IdealSide side) noexcept {
  switch (side) {
    case IdealSide::ImageRight: return "image-right";
    case IdealSide::ImageLeft: return "image-left";
    case IdealSide::KernelRight: return "kernel-right";
    case IdealSide::KernelLeft: return "kernel-left";
  }
  return "?";
}

}  // namespace bcinv
