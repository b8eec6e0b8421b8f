#pragma once

#include <concepts>
#include <cstddef>
#include <string>

namespace bcinv {

/// A unitary ring backend: value-type elements plus arithmetic on them.
template <class R>
concept Ring = requires(const R& r, const typename R::Elem& x) {
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.add(x, x) } -> std::same_as<typename R::Elem>;
  { r.sub(x, x) } -> std::same_as<typename R::Elem>;
  { r.mul(x, x) } -> std::same_as<typename R::Elem>;
  { r.neg(x) } -> std::same_as<typename R::Elem>;
  { r.equal(x, x) } -> std::convertible_to<bool>;
  { r.norm(x) } -> std::convertible_to<double>;
  { r.negligible(x, 1.0) } -> std::convertible_to<bool>;
  { r.to_string(x) } -> std::convertible_to<std::string>;
};

/// Finite rings whose elements can be listed in a fixed order.
template <class R>
concept EnumerableRing = Ring<R> && requires(const R& r, const typename R::Elem& x, std::size_t i) {
  { r.enumerable() } -> std::convertible_to<bool>;
  { r.size() } -> std::convertible_to<std::size_t>;
  { r.element(i) } -> std::same_as<typename R::Elem>;
  { r.index(x) } -> std::convertible_to<std::size_t>;
};

/// Full matrix algebras M_k(F) with linear algebra available.
template <class R>
concept MatrixAlgebra = Ring<R> && requires(const R& r) {
  typename R::FieldType;
  { r.dim() } -> std::convertible_to<std::size_t>;
  { r.field() };
};

template <Ring R, class... Xs>
typename R::Elem product(const R& r, const typename R::Elem& x, const Xs&... rest) {
  if constexpr (sizeof...(rest) == 0) {
    return x;
  } else {
    return r.mul(x, product(r, rest...));
  }
}

}  // namespace bcinv
