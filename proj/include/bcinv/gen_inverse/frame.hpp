#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bcinv/ring/ops.hpp"

namespace bcinv {

/// The data (b, c, g, h) with g ∈ b{1}, h ∈ c{1}, and the idempotents p = b·g,
/// q = h·c derived from it.
template <Ring R>
struct CornerFrame {
  using Elem = typename R::Elem;
  Elem b, c, g, h;
  Elem p, q;
};

/// Builds a frame, choosing canonical inner inverses where none are given.
/// Throws NotRegular when b or c has no inner inverse, PreconditionFailed when
/// a supplied g or h is not one.
template <Ring R>
CornerFrame<R> make_frame(const R& r, const typename R::Elem& b, const typename R::Elem& c,
                          std::optional<typename R::Elem> g = std::nullopt,
                          std::optional<typename R::Elem> h = std::nullopt) {
  if (g) {
    require(is_inner_inverse(r, b, *g), ErrorKind::PreconditionFailed,
            "g = " + r.to_string(*g) + " is not an inner inverse of b = " + r.to_string(b));
  } else {
    g = canonical_inner_inverse(r, b);
  }
  if (h) {
    require(is_inner_inverse(r, c, *h), ErrorKind::PreconditionFailed,
            "h = " + r.to_string(*h) + " is not an inner inverse of c = " + r.to_string(c));
  } else {
    h = canonical_inner_inverse(r, c);
  }
  auto p = r.mul(b, *g);
  auto q = r.mul(*h, c);
  return {b, c, std::move(*g), std::move(*h), std::move(p), std::move(q)};
}

/// Frame for idempotents p, q, each serving as its own inner inverse.
template <Ring R>
CornerFrame<R> idempotent_frame(const R& r, const typename R::Elem& p, const typename R::Elem& q) {
  require(is_idempotent(r, p), ErrorKind::PreconditionFailed, r.to_string(p) + " is not idempotent");
  require(is_idempotent(r, q), ErrorKind::PreconditionFailed, r.to_string(q) + " is not idempotent");
  return {p, q, p, q, p, q};
}

enum class Method { Auto, Corner, Factor, Group, Exhaustive };

inline std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Corner: return "corner";
    case Method::Factor: return "factor";
    case Method::Group: return "group";
    case Method::Exhaustive: return "exhaustive";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "auto") return Method::Auto;
  if (s == "corner") return Method::Corner;
  if (s == "factor") return Method::Factor;
  if (s == "group") return Method::Group;
  if (s == "exhaustive") return Method::Exhaustive;
  fail(ErrorKind::ParseError, "unknown method '" + std::string(s) + "'");
}

}  // namespace bcinv
