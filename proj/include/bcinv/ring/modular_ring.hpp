#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "bcinv/error.hpp"
#include "bcinv/ring/concepts.hpp"

namespace bcinv {

/// Element of an enumerable finite ring, identified by its position in the
/// ring's enumeration order.
struct Element {
  std::uint32_t id = 0;
  auto operator<=>(const Element&) const = default;
};

/// Z_n with direct residue arithmetic.
class ModularRing {
 public:
  using Elem = Element;

  explicit ModularRing(std::uint32_t n) : n_(n) {
    require(n >= 2, ErrorKind::PreconditionFailed, "Z_n needs n >= 2");
  }

  std::uint32_t modulus() const noexcept { return n_; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem make(long long v) const {
    long long r = v % static_cast<long long>(n_);
    return {static_cast<std::uint32_t>(r < 0 ? r + n_ : r)};
  }
  Elem add(Elem x, Elem y) const { return {static_cast<std::uint32_t>((std::uint64_t{x.id} + y.id) % n_)}; }
  Elem sub(Elem x, Elem y) const { return {static_cast<std::uint32_t>((std::uint64_t{x.id} + n_ - y.id) % n_)}; }
  Elem mul(Elem x, Elem y) const { return {static_cast<std::uint32_t>((std::uint64_t{x.id} * y.id) % n_)}; }
  Elem neg(Elem x) const { return {x.id == 0 ? 0 : n_ - x.id}; }
  bool equal(Elem x, Elem y) const { return x.id == y.id; }
  double norm(Elem x) const { return x.id == 0 ? 0.0 : 1.0; }
  bool negligible(Elem x, double) const { return x.id == 0; }
  std::string to_string(Elem x) const { return std::to_string(x.id); }

  bool enumerable() const { return true; }
  std::size_t size() const { return n_; }
  Elem element(std::size_t i) const { return {static_cast<std::uint32_t>(i)}; }
  std::size_t index(Elem x) const { return x.id; }

  bool operator==(const ModularRing&) const = default;

 private:
  std::uint32_t n_;
};

}  // namespace bcinv
