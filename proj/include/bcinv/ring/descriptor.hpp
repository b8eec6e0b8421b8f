#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bcinv/ring/matrix_ring.hpp"
#include "bcinv/ring/modular_ring.hpp"

namespace bcinv {

/// Names one concrete backend: Z_n, M_k(F_p), M_k(Q) or M_k(R).
struct RingDescriptor {
  enum class Kind { Modular, PrimeMatrix, RationalMatrix, RealMatrix };

  Kind kind = Kind::Modular;
  std::uint32_t n = 2;  ///< modulus for Z_n
  std::uint32_t p = 2;  ///< characteristic for M_k(F_p)
  std::size_t k = 1;    ///< matrix size
  double tolerance = 0.0;  ///< equality tolerance, 0 for exact backends

  bool exact() const noexcept { return kind != Kind::RealMatrix; }
  bool is_matrix() const noexcept { return kind != Kind::Modular; }
  bool finite() const noexcept { return kind == Kind::Modular || kind == Kind::PrimeMatrix; }

  bool operator==(const RingDescriptor&) const = default;
};

inline constexpr double kDefaultTolerance = 1e-12;

/// Accepts "Zn:6" or "Z6", "MFp:2:2" (p then k) or "M2F2" (k then p), "Q:3", "R:4".
/// `tolerance` applies to R only and must be positive.
RingDescriptor parse_ring(std::string_view text, double tolerance = kDefaultTolerance);

/// Canonical spelling ("Zn:6", "MFp:2:2", "Q:3", "R:4").
std::string to_string(const RingDescriptor& d);

/// Short name used in reports ("Z6", "M2F2", ...).
std::string short_name(const RingDescriptor& d);

RealField real_field(double tolerance);

ModularRing make_modular(const RingDescriptor& d);
PrimeMatrixRing make_prime_matrix(const RingDescriptor& d);
RationalMatrixRing make_rational_matrix(const RingDescriptor& d);
RealMatrixRing make_real_matrix(const RingDescriptor& d);

/// Calls fn with the concrete ring object. Every branch must return the same type.
template <class Fn>
decltype(auto) with_ring(const RingDescriptor& d, Fn&& fn) {
  switch (d.kind) {
    case RingDescriptor::Kind::Modular: return fn(make_modular(d));
    case RingDescriptor::Kind::PrimeMatrix: return fn(make_prime_matrix(d));
    case RingDescriptor::Kind::RationalMatrix: return fn(make_rational_matrix(d));
    case RingDescriptor::Kind::RealMatrix: break;
  }
  return fn(make_real_matrix(d));
}

}  // namespace bcinv
