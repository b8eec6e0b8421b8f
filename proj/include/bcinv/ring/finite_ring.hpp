#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcinv/ring/concepts.hpp"
#include "bcinv/ring/modular_ring.hpp"

namespace bcinv {

/// A small finite ring held as addition/multiplication tables. Element ids
/// follow the enumeration order of the ring it was tabulated from.
class FiniteRing {
 public:
  using Elem = Element;

  template <EnumerableRing R>
  static FiniteRing tabulate(const R& ring, std::string name, std::size_t cap) {
    require(ring.enumerable(), ErrorKind::CapExceeded, name + " cannot be enumerated");
    const std::size_t n = ring.size();
    require(n <= cap, ErrorKind::CapExceeded,
            name + " has " + std::to_string(n) + " elements, cap is " + std::to_string(cap));
    FiniteRing out;
    out.n_ = n;
    out.name_ = std::move(name);
    std::vector<typename R::Elem> elems;
    elems.reserve(n);
    for (std::size_t i = 0; i < n; ++i) elems.push_back(ring.element(i));
    out.add_.resize(n * n);
    out.mul_.resize(n * n);
    out.neg_.resize(n);
    out.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.labels_[i] = ring.to_string(elems[i]);
      out.neg_[i] = static_cast<std::uint32_t>(ring.index(ring.neg(elems[i])));
      for (std::size_t j = 0; j < n; ++j) {
        out.add_[i * n + j] = static_cast<std::uint32_t>(ring.index(ring.add(elems[i], elems[j])));
        out.mul_[i * n + j] = static_cast<std::uint32_t>(ring.index(ring.mul(elems[i], elems[j])));
      }
    }
    out.zero_ = {static_cast<std::uint32_t>(ring.index(ring.zero()))};
    out.one_ = {static_cast<std::uint32_t>(ring.index(ring.one()))};
    return out;
  }

  const std::string& name() const noexcept { return name_; }

  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem add(Elem x, Elem y) const { return {add_[x.id * n_ + y.id]}; }
  Elem mul(Elem x, Elem y) const { return {mul_[x.id * n_ + y.id]}; }
  Elem neg(Elem x) const { return {neg_[x.id]}; }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  bool equal(Elem x, Elem y) const { return x.id == y.id; }
  double norm(Elem x) const { return x == zero_ ? 0.0 : 1.0; }
  bool negligible(Elem x, double) const { return x == zero_; }
  std::string to_string(Elem x) const { return labels_[x.id]; }

  bool enumerable() const { return true; }
  std::size_t size() const { return n_; }
  Elem element(std::size_t i) const { return {static_cast<std::uint32_t>(i)}; }
  std::size_t index(Elem x) const { return x.id; }

 private:
  FiniteRing() = default;

  std::size_t n_ = 0;
  std::string name_;
  std::vector<std::uint32_t> add_, mul_, neg_;
  std::vector<std::string> labels_;
  Elem zero_, one_;
};

}  // namespace bcinv
