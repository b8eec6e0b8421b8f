#pragma once

#include <optional>

#include "bcinv/gen_inverse/outer.hpp"

namespace bcinv {

template <Ring R>
struct UnitConsistency {
  bool b_right_c_left = false;  ///< b right invertible and c left invertible
  bool y_invertible = false;
  bool y_is_inverse_of_a = false;
  typename R::Elem y;
};

/// Compares "b right invertible and c left invertible" with invertibility of
/// y = a^{-(b,c)}. The two are asserted equivalent, and each holds exactly
/// when a is a unit with y = a^{-1}. A unit a alone does not force the
/// condition (Z_6: a = 5, b = c = 4).
template <Ring R>
UnitConsistency<R> unit_consistency(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr,
                                    Method method = Method::Auto) {
  UnitConsistency<R> out;
  out.y = bc_inverse(r, a, fr, method);
  out.b_right_c_left = is_right_invertible(r, fr.b) && is_left_invertible(r, fr.c);
  out.y_invertible = is_unit(r, out.y);
  out.y_is_inverse_of_a = is_unit(r, a) && agree(r, r.mul(a, out.y), r.one()) && agree(r, r.mul(out.y, a), r.one());
  require(out.b_right_c_left == out.y_invertible && out.y_invertible == out.y_is_inverse_of_a,
          ErrorKind::PropertyRefuted, "unit consistency fails for a = " + r.to_string(a));
  return out;
}

/// x ∈ q·R·p together with z ∈ b·R·c such that z·x = p and x·z = q.
template <Ring R>
struct CornerUnit {
  typename R::Elem x;
  typename R::Elem z;
};

template <Ring R>
std::optional<CornerUnit<R>> corner_unit_membership(const R& r, const typename R::Elem& x, const CornerFrame<R>& fr) {
  const double nx = r.norm(x);
  if (!r.negligible(r.sub(product(r, fr.q, x, fr.p), x), r.norm(fr.q) * nx * r.norm(fr.p) + nx)) return std::nullopt;
  auto witnesses = [&](const typename R::Elem& z) {
    const double nz = r.norm(z);
    return r.negligible(r.sub(r.mul(z, x), fr.p), nz * nx + r.norm(fr.p)) &&
           r.negligible(r.sub(r.mul(x, z), fr.q), nx * nz + r.norm(fr.q)) &&
           r.negligible(r.sub(product(r, fr.p, z, fr.q), z), r.norm(fr.p) * nz * r.norm(fr.q) + nz);
  };
  if constexpr (MatrixAlgebra<R>) {
    const auto rx = r.rank(x);
    if (rx != r.rank(fr.p) || rx != r.rank(fr.q)) return std::nullopt;
    const auto z = try_bc_inverse(r, x, fr, Method::Factor);
    if (!z || !witnesses(*z)) return std::nullopt;
    return CornerUnit<R>{x, *z};
  } else {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto z = product(r, fr.b, r.element(i), fr.c);
      if (witnesses(z)) return CornerUnit<R>{x, z};
    }
    return std::nullopt;
  }
}

/// Membership of m in q·R·(1-p) + (1-q)·R, i.e. q·m·p = 0.
template <Ring R>
bool in_complement_set(const R& r, const typename R::Elem& m, const CornerFrame<R>& fr) {
  return r.negligible(product(r, fr.q, m, fr.p), r.norm(fr.q) * r.norm(m) * r.norm(fr.p));
}

template <Ring R>
struct Decomposition {
  CornerUnit<R> unit;    ///< x = q·a·p
  typename R::Elem rest; ///< m = a - x = q·a·(1-p) + (1-q)·a
};

/// a = x + m with x a corner unit and q·m·p = 0.
template <Ring R>
Decomposition<R> decompose_bc_invertible(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr) {
  const auto x = product(r, fr.q, a, fr.p);
  auto unit = corner_unit_membership(r, x, fr);
  require(unit.has_value(), ErrorKind::PreconditionFailed, r.to_string(a) + " is not (b,c)-invertible");
  const auto m = r.sub(a, x);
  const auto expected =
      r.add(product(r, fr.q, a, complement(r, fr.p)), r.mul(complement(r, fr.q), a));
  require(agree(r, m, expected) && in_complement_set(r, m, fr), ErrorKind::PropertyRefuted,
          "remainder is outside q*R*(1-p) + (1-q)*R");
  return {std::move(*unit), m};
}

/// (a+m)^{-(b,c)} for m with q·m·p = 0, asserted equal to a^{-(b,c)}.
template <Ring R>
typename R::Elem perturb_invariant(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr,
                                   const typename R::Elem& m, Method method = Method::Auto) {
  require(in_complement_set(r, m, fr), ErrorKind::PreconditionFailed,
          "perturbation " + r.to_string(m) + " is outside q*R*(1-p) + (1-q)*R");
  const auto base = bc_inverse(r, a, fr, method);
  const auto moved = bc_inverse(r, r.add(a, m), fr, method);
  require(agree(r, base, moved), ErrorKind::PropertyRefuted, "perturbation changed the (b,c)-inverse");
  return moved;
}

/// Inverse of u inside the corner ring e·R·e; SingularCorner when u is not a unit there.
template <Ring R>
typename R::Elem corner_inverse(const R& r, const typename R::Elem& u, const typename R::Elem& e) {
  const double nu = r.norm(u), ne = r.norm(e);
  require(r.negligible(r.sub(product(r, e, u, e), u), ne * nu * ne + nu), ErrorKind::SingularCorner,
          r.to_string(u) + " does not lie in the corner ring");
  try {
    return bott_duffin_inverse(r, u, e, e);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::InverseAbsent)
      fail(ErrorKind::SingularCorner, r.to_string(u) + " is not a unit of the corner ring");
    throw;
  }
}

/// (v·x·u + m)^{-(b,c)}, asserted equal to u⁻¹·x^{-(b,c)}·v⁻¹ with corner inverses
/// u⁻¹ in p·R·p and v⁻¹ in q·R·q.
template <Ring R>
typename R::Elem scale_corner(const R& r, const CornerUnit<R>& x, const typename R::Elem& u,
                              const typename R::Elem& v, const CornerFrame<R>& fr, const typename R::Elem& m,
                              Method method = Method::Auto) {
  const auto u_inv = corner_inverse(r, u, fr.p);
  const auto v_inv = corner_inverse(r, v, fr.q);
  require(in_complement_set(r, m, fr), ErrorKind::PreconditionFailed,
          "perturbation " + r.to_string(m) + " is outside q*R*(1-p) + (1-q)*R");
  const auto scaled = product(r, v, x.x, u);
  const auto result = bc_inverse(r, r.add(scaled, m), fr, method);
  const auto expected = product(r, u_inv, x.z, v_inv);
  require(agree(r, result, expected), ErrorKind::PropertyRefuted, "corner scaling formula fails");
  require(agree(r, bc_inverse(r, scaled, fr, method), expected), ErrorKind::PropertyRefuted,
          "corner scaling formula fails without the perturbation");
  return result;
}

/// (a^{-(b,c)} + m)^{-(q,p)} for p·m·q = 0, asserted equal to q·a·p.
template <Ring R>
typename R::Elem inverse_of_inverse(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr,
                                    const typename R::Elem& m, Method method = Method::Auto) {
  require(r.negligible(product(r, fr.p, m, fr.q), r.norm(fr.p) * r.norm(m) * r.norm(fr.q)),
          ErrorKind::PreconditionFailed, "perturbation " + r.to_string(m) + " is outside p*R*(1-q) + (1-p)*R");
  const auto y = bc_inverse(r, a, fr, method);
  const auto swapped = CornerFrame<R>{fr.q, fr.p, fr.q, fr.p, fr.q, fr.p};
  const auto result = bc_inverse(r, r.add(y, m), swapped, method);
  require(agree(r, result, product(r, fr.q, a, fr.p)), ErrorKind::PropertyRefuted,
          "inverse of the inverse differs from q*a*p");
  return result;
}

template <Ring R>
struct SplitInverse {
  typename R::Elem part;        ///< a^{-(p,q)}
  typename R::Elem complement;  ///< a^{-(1-p,1-q)}
  typename R::Elem sum;         ///< = a^{-1}
};

/// For a·p = q·a: a is a unit iff a^{-(p,q)} and a^{-(1-p,1-q)} both exist, and
/// then a^{-1} is their sum. Throws InverseAbsent when a constituent is missing.
template <Ring R>
SplitInverse<R> bott_duffin_split_inverse(const R& r, const typename R::Elem& a, const typename R::Elem& p,
                                          const typename R::Elem& q, Method method = Method::Auto) {
  require(is_idempotent(r, p), ErrorKind::PreconditionFailed, r.to_string(p) + " is not idempotent");
  require(is_idempotent(r, q), ErrorKind::PreconditionFailed, r.to_string(q) + " is not idempotent");
  const double na = r.norm(a);
  require(r.negligible(r.sub(r.mul(a, p), r.mul(q, a)), na * (r.norm(p) + r.norm(q))), ErrorKind::PreconditionFailed,
          "a*p differs from q*a");
  const auto pc = complement(r, p), qc = complement(r, q);
  const auto part = try_bc_inverse(r, a, idempotent_frame(r, p, q), method);
  const auto rest = try_bc_inverse(r, a, idempotent_frame(r, pc, qc), method);
  const bool unit = is_unit(r, a);
  if (!part || !rest) {
    require(!unit, ErrorKind::PropertyRefuted, "a is invertible but a Bott-Duffin constituent is missing");
    fail(ErrorKind::InverseAbsent, std::string("Bott-Duffin ") + (part ? "(1-p,1-q)" : "(p,q)") + "-inverse is absent");
  }
  const auto z = r.add(*part, *rest);
  const double nz = r.norm(z);
  const double s = nz * na + 1.0;
  const bool blocks = r.negligible(r.sub(r.mul(z, q), r.mul(p, z)), nz * 2) &&
                      r.negligible(r.sub(product(r, p, z, q, a, p), p), s) &&
                      r.negligible(r.sub(product(r, pc, z, qc, a, pc), pc), s) &&
                      r.negligible(r.sub(product(r, q, a, p, z, q), q), s) &&
                      r.negligible(r.sub(product(r, qc, a, pc, z, qc), qc), s);
  require(blocks, ErrorKind::PropertyRefuted, "block equations fail for the split sum");
  require(unit && r.negligible(r.sub(r.mul(z, a), r.one()), s) && r.negligible(r.sub(r.mul(a, z), r.one()), s),
          ErrorKind::PropertyRefuted, "split sum is not a two-sided inverse of a");
  return {*part, *rest, z};
}

template <Ring R>
struct ReverseOrderResult {
  bool obstruction_vanishes = false;  ///< q1·a1·(1-p1)·a2·p2 = 0
  bool law_holds = false;
  typename R::Elem obstruction;
  std::optional<typename R::Elem> product_inverse;  ///< (a1·a2)^{-(b2,c1)} when it exists
  typename R::Elem reversed_product;                ///< a2^{-(b2,c2)}·a1^{-(b1,c1)}
};

/// Reverse order law for a1·a2 under frames chained by h2·c2 = b1·g1. The
/// vanishing obstruction is asserted equivalent to the law.
template <Ring R>
ReverseOrderResult<R> reverse_order_law_check(const R& r, const typename R::Elem& a1, const CornerFrame<R>& f1,
                                              const typename R::Elem& a2, const CornerFrame<R>& f2,
                                              Method method = Method::Auto) {
  require(agree(r, f2.q, f1.p), ErrorKind::PreconditionFailed, "chain condition h2*c2 = b1*g1 fails");
  const auto y1 = try_bc_inverse(r, a1, f1, method);
  const auto y2 = try_bc_inverse(r, a2, f2, method);
  require(y1.has_value() && y2.has_value(), ErrorKind::PreconditionFailed,
          "both constituent (b,c)-inverses must exist");
  ReverseOrderResult<R> out;
  out.obstruction = product(r, f1.q, a1, complement(r, f1.p), a2, f2.p);
  out.obstruction_vanishes =
      r.negligible(out.obstruction, r.norm(f1.q) * r.norm(a1) * r.norm(complement(r, f1.p)) * r.norm(a2) * r.norm(f2.p));
  out.reversed_product = r.mul(*y2, *y1);
  const CornerFrame<R> chained{f2.b, f1.c, f2.g, f1.h, f2.p, f1.q};
  out.product_inverse = try_bc_inverse(r, r.mul(a1, a2), chained, method);
  out.law_holds = out.product_inverse.has_value() && agree(r, *out.product_inverse, out.reversed_product);
  require(out.obstruction_vanishes == out.law_holds, ErrorKind::PropertyRefuted,
          "reverse order law and its criterion disagree");
  return out;
}

}  // namespace bcinv
