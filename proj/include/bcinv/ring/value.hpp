#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "bcinv/ring/descriptor.hpp"

namespace bcinv {

using Json = nlohmann::ordered_json;

/// An element tagged with the ring it belongs to.
struct RingValue {
  using Payload = std::variant<Element, Matrix<std::uint32_t>, Matrix<Rational>, Matrix<double>>;

  RingDescriptor ring;
  Payload payload;
};

template <class R>
struct ring_payload;
template <>
struct ring_payload<ModularRing> { using type = Element; };
template <>
struct ring_payload<PrimeMatrixRing> { using type = Matrix<std::uint32_t>; };
template <>
struct ring_payload<RationalMatrixRing> { using type = Matrix<Rational>; };
template <>
struct ring_payload<RealMatrixRing> { using type = Matrix<double>; };

template <class R>
RingValue wrap(const RingDescriptor& d, typename R::Elem x) {
  return {d, typename ring_payload<R>::type(std::move(x))};
}

/// The payload as an element of ring R; RingMismatch if it was built elsewhere.
template <class R>
const typename R::Elem& unwrap(const RingDescriptor& d, const RingValue& v) {
  require(v.ring == d, ErrorKind::RingMismatch, "value from " + to_string(v.ring) + " used in " + to_string(d));
  const auto* x = std::get_if<typename ring_payload<R>::type>(&v.payload);
  require(x != nullptr, ErrorKind::RingMismatch, "payload does not belong to " + to_string(d));
  return *x;
}

enum class ArithOp { Add, Sub, Mul, Neg, Eq };

ArithOp parse_arith_op(std::string_view s);

/// add/sub/mul/neg give a value, eq a truth value. RingMismatch when the
/// descriptors differ, DimensionMismatch on shape conflicts.
std::variant<RingValue, bool> ring_arith(const RingValue& x, const RingValue& y, ArithOp op);

/// Element literals. Z_n: integers. Matrices: nested arrays of integers,
/// decimals or "p/q" strings, or one of "0", "1", "I", "Eij" (1-based),
/// "diag(x,...)". A string that itself holds a JSON array is accepted too.
template <class R>
typename R::Elem parse_element(const R& r, const Json& literal);

RingValue parse_value(const RingDescriptor& d, const Json& literal);
RingValue parse_value(const RingDescriptor& d, const std::string& literal);

Json to_json(const RingValue& v);

template <class R>
Json element_to_json(const R& r, const typename R::Elem& x);

std::string to_string(const RingValue& v);

}  // namespace bcinv
