#include "bcinv/ring/descriptor.hpp"

#include <charconv>
#include <vector>

namespace bcinv {

namespace {

std::uint64_t parse_count(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  require(ec == std::errc() && ptr == end && !s.empty(), ErrorKind::ParseError,
          "bad " + std::string(what) + " '" + std::string(s) + "'");
  require(v <= 0xFFFFFFFFull, ErrorKind::ParseError, std::string(what) + " too large");
  return v;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

RingDescriptor validated(RingDescriptor d) {
  using K = RingDescriptor::Kind;
  require(d.kind != K::Modular || d.n >= 2, ErrorKind::ParseError, "Z_n needs n >= 2");
  require(d.kind != K::PrimeMatrix || is_prime(d.p), ErrorKind::ParseError,
          std::to_string(d.p) + " is not prime");
  require(d.kind == K::Modular || d.k >= 1, ErrorKind::ParseError, "matrix size must be at least 1");
  require(d.kind != K::RealMatrix || d.tolerance > 0.0, ErrorKind::ParseError,
          "floating-point backends need a positive tolerance");
  if (d.kind != K::RealMatrix) d.tolerance = 0.0;
  if (d.kind == K::Modular) d.k = 1;
  return d;
}

}  // namespace

RingDescriptor parse_ring(std::string_view text, double tolerance) {
  using K = RingDescriptor::Kind;
  RingDescriptor d;
  d.tolerance = tolerance;
  const auto parts = split(text, ':');
  const auto head = parts.front();
  if (parts.size() > 1) {
    if (head == "Zn" && parts.size() == 2) {
      d.kind = K::Modular;
      d.n = static_cast<std::uint32_t>(parse_count(parts[1], "modulus"));
    } else if (head == "MFp" && parts.size() == 3) {
      d.kind = K::PrimeMatrix;
      d.p = static_cast<std::uint32_t>(parse_count(parts[1], "prime"));
      d.k = parse_count(parts[2], "matrix size");
    } else if (head == "Q" && parts.size() == 2) {
      d.kind = K::RationalMatrix;
      d.k = parse_count(parts[1], "matrix size");
    } else if (head == "R" && parts.size() == 2) {
      d.kind = K::RealMatrix;
      d.k = parse_count(parts[1], "matrix size");
    } else {
      fail(ErrorKind::ParseError, "unknown ring '" + std::string(text) + "'");
    }
    return validated(d);
  }
  // Compact spellings: Z6, M2F2.
  if (text.size() > 1 && text[0] == 'Z') {
    d.kind = K::Modular;
    d.n = static_cast<std::uint32_t>(parse_count(text.substr(1), "modulus"));
    return validated(d);
  }
  if (text.size() > 3 && text[0] == 'M') {
    const auto f = text.find('F');
    require(f != std::string_view::npos, ErrorKind::ParseError, "unknown ring '" + std::string(text) + "'");
    d.kind = K::PrimeMatrix;
    d.k = parse_count(text.substr(1, f - 1), "matrix size");
    d.p = static_cast<std::uint32_t>(parse_count(text.substr(f + 1), "prime"));
    return validated(d);
  }
  fail(ErrorKind::ParseError, "unknown ring '" + std::string(text) + "'");
}

std::string to_string(const RingDescriptor& d) {
  using K = RingDescriptor::Kind;
  switch (d.kind) {
    case K::Modular: return "Zn:" + std::to_string(d.n);
    case K::PrimeMatrix: return "MFp:" + std::to_string(d.p) + ":" + std::to_string(d.k);
    case K::RationalMatrix: return "Q:" + std::to_string(d.k);
    case K::RealMatrix: return "R:" + std::to_string(d.k);
  }
  return "?";
}

std::string short_name(const RingDescriptor& d) {
  using K = RingDescriptor::Kind;
  switch (d.kind) {
    case K::Modular: return "Z" + std::to_string(d.n);
    case K::PrimeMatrix: return "M" + std::to_string(d.k) + "F" + std::to_string(d.p);
    default: return to_string(d);
  }
}

RealField real_field(double tolerance) {
  RealField f;
  f.equality_tol = tolerance;
  f.verdict_tol = std::max(f.verdict_tol, tolerance);
  return f;
}

ModularRing make_modular(const RingDescriptor& d) { return ModularRing(d.n); }
PrimeMatrixRing make_prime_matrix(const RingDescriptor& d) { return PrimeMatrixRing(PrimeField{d.p}, d.k); }
RationalMatrixRing make_rational_matrix(const RingDescriptor& d) { return RationalMatrixRing(RationalField{}, d.k); }
RealMatrixRing make_real_matrix(const RingDescriptor& d) { return RealMatrixRing(real_field(d.tolerance), d.k); }

}  // namespace bcinv
