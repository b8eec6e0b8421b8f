#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "bcinv/error.hpp"

namespace bcinv {

using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;

/// Scalars of F_p stored as residues in [0, p).
struct PrimeField {
  using Scalar = std::uint32_t;
  static constexpr bool exact = true;

  std::uint32_t p = 2;

  Scalar zero() const { return 0; }
  Scalar one() const { return 1 % p; }
  Scalar add(Scalar x, Scalar y) const { return static_cast<Scalar>((std::uint64_t{x} + y) % p); }
  Scalar sub(Scalar x, Scalar y) const { return static_cast<Scalar>((std::uint64_t{x} + p - y) % p); }
  Scalar mul(Scalar x, Scalar y) const { return static_cast<Scalar>((std::uint64_t{x} * y) % p); }
  Scalar neg(Scalar x) const { return x == 0 ? 0 : p - x; }
  Scalar inv(Scalar x) const {
    require(x % p != 0, ErrorKind::NotInvertible, "zero has no inverse in F_" + std::to_string(p));
    // Fermat: x^(p-2)
    std::uint64_t base = x, result = 1;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1U) result = result * base % p;
      base = base * base % p;
    }
    return static_cast<Scalar>(result);
  }
  bool is_zero(Scalar x) const { return x % p == 0; }
  bool equal(Scalar x, Scalar y) const { return x % p == y % p; }
  Scalar from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<Scalar>(r < 0 ? r + p : r);
  }
  double magnitude(Scalar x) const { return is_zero(x) ? 0.0 : 1.0; }
  std::string to_string(Scalar x) const { return std::to_string(x); }

  bool operator==(const PrimeField&) const = default;
};

struct RationalField {
  using Scalar = Rational;
  static constexpr bool exact = true;

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar add(const Scalar& x, const Scalar& y) const { return x + y; }
  Scalar sub(const Scalar& x, const Scalar& y) const { return x - y; }
  Scalar mul(const Scalar& x, const Scalar& y) const { return x * y; }
  Scalar neg(const Scalar& x) const { return -x; }
  Scalar inv(const Scalar& x) const {
    require(x != 0, ErrorKind::NotInvertible, "zero has no rational inverse");
    return Scalar(1) / x;
  }
  bool is_zero(const Scalar& x) const { return x == 0; }
  bool equal(const Scalar& x, const Scalar& y) const { return x == y; }
  Scalar from_int(long long v) const { return Scalar(v); }
  double magnitude(const Scalar& x) const { return std::abs(x.convert_to<double>()); }
  std::string to_string(const Scalar& x) const { return x.str(); }

  bool operator==(const RationalField&) const = default;
};

/// Floating-point scalars. `equality_tol` governs element comparison,
/// `rank_tol` the numerical-rank cutoff relative to the largest singular value,
/// `verdict_tol` the scale-aware residual bound used by verifications.
struct RealField {
  using Scalar = double;
  static constexpr bool exact = false;

  double equality_tol = 1e-12;
  double rank_tol = 1e-10;
  double verdict_tol = 1e-8;

  Scalar zero() const { return 0.0; }
  Scalar one() const { return 1.0; }
  Scalar add(Scalar x, Scalar y) const { return x + y; }
  Scalar sub(Scalar x, Scalar y) const { return x - y; }
  Scalar mul(Scalar x, Scalar y) const { return x * y; }
  Scalar neg(Scalar x) const { return -x; }
  Scalar inv(Scalar x) const {
    require(x != 0.0, ErrorKind::NotInvertible, "zero has no real inverse");
    return 1.0 / x;
  }
  bool is_zero(Scalar x) const { return std::abs(x) <= equality_tol; }
  bool equal(Scalar x, Scalar y) const { return std::abs(x - y) <= equality_tol * std::max({1.0, std::abs(x), std::abs(y)}); }
  Scalar from_int(long long v) const { return static_cast<double>(v); }
  double magnitude(Scalar x) const { return std::abs(x); }
  std::string to_string(Scalar x) const;

  bool operator==(const RealField&) const = default;
};

inline std::string RealField::to_string(Scalar x) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class F>
concept Field = requires(const F& f, const typename F::Scalar& x) {
  { f.zero() } -> std::convertible_to<typename F::Scalar>;
  { f.one() } -> std::convertible_to<typename F::Scalar>;
  { f.add(x, x) } -> std::convertible_to<typename F::Scalar>;
  { f.mul(x, x) } -> std::convertible_to<typename F::Scalar>;
  { f.inv(x) } -> std::convertible_to<typename F::Scalar>;
  { f.is_zero(x) } -> std::convertible_to<bool>;
  { f.magnitude(x) } -> std::convertible_to<double>;
  { F::exact } -> std::convertible_to<bool>;
};

template <class F>
concept ExactField = Field<F> && F::exact;

}  // namespace bcinv
