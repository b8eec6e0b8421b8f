#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcinv/gen_inverse/frame.hpp"

namespace bcinv {

/// Candidate y together with the residuals of every defining equation, so a
/// verdict can be re-checked without trusting the routine that produced y.
template <Ring R>
struct BcCertificate {
  using Elem = typename R::Elem;
  struct Residual {
    std::string name;
    Elem value;
    double norm = 0.0;
    double scale = 0.0;
    bool vanishes = false;
  };

  Elem y;
  Elem witness;  ///< w = g·y·h, with y = b·w·c when condition (i) holds
  std::vector<Residual> residuals;
  bool verdict = false;

  double max_residual() const {
    double m = 0.0;
    for (const auto& r : residuals) m = std::max(m, r.norm);
    return m;
  }
};

/// Checks y against b = y·a·b, c = c·a·y and y ∈ bRy ∩ yRc. With g ∈ b{1} and
/// h ∈ c{1} the latter is p·y = y = y·q, and then y = b·(g·y·h)·c.
template <Ring R>
BcCertificate<R> verify_bc_inverse(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr,
                                   const typename R::Elem& y) {
  BcCertificate<R> cert;
  cert.y = y;
  cert.witness = product(r, fr.g, y, fr.h);
  const double na = r.norm(a), nb = r.norm(fr.b), nc = r.norm(fr.c), ny = r.norm(y);
  auto add = [&](std::string name, typename R::Elem value, double scale) {
    const double n = r.norm(value);
    const bool ok = r.negligible(value, scale);
    cert.residuals.push_back({std::move(name), std::move(value), n, scale, ok});
  };
  add("y - p*y", r.sub(y, r.mul(fr.p, y)), ny + r.norm(fr.p) * ny);
  add("y - y*q", r.sub(y, r.mul(y, fr.q)), ny + ny * r.norm(fr.q));
  add("y - b*w*c", r.sub(y, product(r, fr.b, cert.witness, fr.c)), ny + nb * r.norm(cert.witness) * nc);
  add("b - y*a*b", r.sub(fr.b, product(r, y, a, fr.b)), nb + ny * na * nb);
  add("c - c*a*y", r.sub(fr.c, product(r, fr.c, a, y)), nc + nc * na * ny);
  add("y - y*a*y", r.sub(y, product(r, y, a, y)), ny + ny * na * ny);
  cert.verdict = true;
  for (const auto& res : cert.residuals) cert.verdict = cert.verdict && res.vanishes;
  return cert;
}

/// x^♯ with x = x·x^♯·x, x^♯ = x^♯·x·x^♯, x·x^♯ = x^♯·x. Matrices use
/// x = F·G, x^♯ = F·(G·F)^{-2}·G; enumerable rings search.
template <Ring R>
typename R::Elem group_inverse(const R& r, const typename R::Elem& x) {
  auto satisfies = [&](const typename R::Elem& y) {
    const double nx = r.norm(x), ny = r.norm(y);
    return r.negligible(r.sub(product(r, x, y, x), x), nx * ny * nx + nx) &&
           r.negligible(r.sub(product(r, y, x, y), y), ny * nx * ny + ny) &&
           r.negligible(r.sub(r.mul(x, y), r.mul(y, x)), 2 * nx * ny);
  };
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    const auto rf = linalg::rank_factorization(f, x);
    if (rf.rank == 0) return r.zero();
    const auto core = linalg::inverse(f, mat::mul(f, rf.right, rf.left));
    require(core.has_value(), ErrorKind::InverseAbsent,
            "no group inverse: rank(x^2) < rank(x) = " + std::to_string(rf.rank));
    const auto y = mat::mul(f, mat::mul(f, rf.left, mat::mul(f, *core, *core)), rf.right);
    require(satisfies(y), ErrorKind::InverseAbsent, "group inverse residuals too large");
    return y;
  } else {
    for (std::size_t i = 0; i < r.size(); ++i)
      if (satisfies(r.element(i))) return r.element(i);
    fail(ErrorKind::InverseAbsent, r.to_string(x) + " is not group invertible");
  }
}

/// An element v with vR = bR and v^{-1}(0) = c^{-1}(0). Matrices: v = B·Cᵣ
/// from b = B·Bᵣ and c = C_l·Cᵣ; enumerable rings: first such v.
template <Ring R>
typename R::Elem build_v(const R& r, const CornerFrame<R>& fr) {
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    const auto fb = linalg::rank_factorization(f, fr.b);
    const auto fc = linalg::rank_factorization(f, fr.c);
    require(fb.rank == fc.rank, ErrorKind::InverseAbsent,
            "rank(b) = " + std::to_string(fb.rank) + " differs from rank(c) = " + std::to_string(fc.rank));
    if (fb.rank == 0) return r.zero();
    return mat::mul(f, fb.left, fc.right);
  } else {
    const auto image_b = ideal_set(r, fr.b, IdealSide::ImageRight).members;
    const auto kernel_c = ideal_set(r, fr.c, IdealSide::KernelRight).members;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto v = r.element(i);
      if (ideal_set(r, v, IdealSide::ImageRight).members == image_b &&
          ideal_set(r, v, IdealSide::KernelRight).members == kernel_c)
        return v;
    }
    fail(ErrorKind::InverseAbsent, "no v with vR = bR and v^{-1}(0) = c^{-1}(0)");
  }
}

namespace detail {

template <Ring R>
typename R::Elem bc_by_factor(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr) {
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    const auto fb = linalg::rank_factorization(f, fr.b);
    const auto fc = linalg::rank_factorization(f, fr.c);
    require(fb.rank == fc.rank, ErrorKind::InverseAbsent,
            "rank(b) = " + std::to_string(fb.rank) + " differs from rank(c) = " + std::to_string(fc.rank));
    if (fb.rank == 0) return r.zero();
    const auto middle = mat::mul(f, mat::mul(f, fc.right, a), fb.left);
    const auto inv = linalg::inverse(f, middle);
    require(inv.has_value(), ErrorKind::InverseAbsent,
            "corner rank deficiency: rank(q*a*p) = " + std::to_string(linalg::rank(f, middle)) + " < rank(b) = " +
                std::to_string(fb.rank));
    return mat::mul(f, mat::mul(f, fb.left, *inv), fc.right);
  } else {
    fail(ErrorKind::MethodUnavailable, "the factor method needs a matrix backend");
  }
}

/// z = b·w·c with z·(q·a·p) = p and (q·a·p)·z = q.
template <Ring R>
typename R::Elem bc_by_corner(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr) {
  const auto corner = product(r, fr.q, a, fr.p);
  if constexpr (MatrixAlgebra<R>) {
    const auto& f = r.field();
    // vec(X W Y) = (Yᵀ ⊗ X) vec(W)
    const auto left_eq = mat::kron(f, mat::transpose(r.mul(fr.c, corner)), fr.b);
    const auto right_eq = mat::kron(f, mat::transpose(fr.c), r.mul(corner, fr.b));
    const auto system = mat::vstack(left_eq, right_eq);
    const auto rhs = mat::vstack(mat::vec(fr.p), mat::vec(fr.q));
    const auto w = linalg::solve(f, system, rhs);
    require(w.has_value(), ErrorKind::InverseAbsent,
            "corner equations z*(q*a*p) = p, (q*a*p)*z = q have no solution z in bRc");
    return product(r, fr.b, mat::unvec(*w, r.dim(), r.dim()), fr.c);
  } else {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto z = product(r, fr.b, r.element(i), fr.c);
      if (r.equal(r.mul(z, corner), fr.p) && r.equal(r.mul(corner, z), fr.q)) return z;
    }
    fail(ErrorKind::InverseAbsent, "no z in bRc solves z*(q*a*p) = p, (q*a*p)*z = q");
  }
}

template <Ring R>
typename R::Elem bc_by_group(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr) {
  const auto v = build_v(r, fr);
  const auto av = r.mul(a, v);
  return r.mul(v, group_inverse(r, av));
}

template <Ring R>
typename R::Elem bc_by_exhaustion(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr) {
  if constexpr (EnumerableRing<R>) {
    require(r.enumerable(), ErrorKind::MethodUnavailable, "exhaustive search needs an enumerable ring");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto y = r.element(i);
      if (verify_bc_inverse(r, a, fr, y).verdict) return y;
    }
    fail(ErrorKind::InverseAbsent, r.to_string(a) + " has no (b,c)-inverse");
  } else {
    fail(ErrorKind::MethodUnavailable, "exhaustive search needs an enumerable ring");
  }
}

}  // namespace detail

/// Method used when the caller asks for Auto.
template <Ring R>
Method default_method(const R&) {
  if constexpr (MatrixAlgebra<R>) {
    return R::FieldType::exact ? Method::Corner : Method::Factor;
  } else {
    return Method::Exhaustive;
  }
}

/// Methods that can run on this backend.
template <Ring R>
std::vector<Method> available_methods(const R& r) {
  std::vector<Method> out{Method::Corner};
  if constexpr (MatrixAlgebra<R>) out.push_back(Method::Factor);
  out.push_back(Method::Group);
  if constexpr (EnumerableRing<R>)
    if (r.enumerable()) out.push_back(Method::Exhaustive);
  return out;
}

/// a^{-(b,c)}. Every method's result is re-verified against the defining
/// equations; failure to verify is reported as InverseAbsent.
template <Ring R>
typename R::Elem bc_inverse(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr,
                            Method method = Method::Auto) {
  if (method == Method::Auto) method = default_method(r);
  typename R::Elem y;
  switch (method) {
    case Method::Factor: y = detail::bc_by_factor(r, a, fr); break;
    case Method::Corner: y = detail::bc_by_corner(r, a, fr); break;
    case Method::Group: y = detail::bc_by_group(r, a, fr); break;
    case Method::Exhaustive: y = detail::bc_by_exhaustion(r, a, fr); break;
    case Method::Auto: break;
  }
  const auto cert = verify_bc_inverse(r, a, fr, y);
  require(cert.verdict, ErrorKind::InverseAbsent,
          std::string("candidate from the ") + std::string(to_string(method)) +
              " method fails verification (max residual " + std::to_string(cert.max_residual()) + ")");
  return y;
}

template <Ring R>
std::optional<typename R::Elem> try_bc_inverse(const R& r, const typename R::Elem& a, const CornerFrame<R>& fr,
                                               Method method = Method::Auto) {
  try {
    return bc_inverse(r, a, fr, method);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InverseAbsent) return std::nullopt;
    throw;
  }
}

}  // namespace bcinv
