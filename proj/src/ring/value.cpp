#include "bcinv/ring/value.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace bcinv {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

long long parse_integer(std::string_view s) {
  long long v = 0;
  const auto t = trim(s);
  const auto* begin = t.data() + (t.size() > 1 && t[0] == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), v);
  require(ec == std::errc() && ptr == t.data() + t.size() && !t.empty(), ErrorKind::ParseError,
          "expected an integer, got '" + t + "'");
  return v;
}

/// "-3", "7/2", "0.25", "1e-3" as an exact rational.
Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Rational den(parse_integer(s.substr(slash + 1)));
    require(den != 0, ErrorKind::ParseError, "zero denominator in '" + s + "'");
    return Rational(parse_integer(s.substr(0, slash))) / den;
  }
  std::string mantissa = s;
  long long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    exponent = parse_integer(s.substr(e + 1));
    mantissa = s.substr(0, e);
  }
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  require(std::abs(exponent) <= 64, ErrorKind::ParseError, "exponent out of range in '" + s + "'");
  Rational v(parse_integer(mantissa));
  Rational ten(10);
  for (long long i = 0; i < std::abs(exponent); ++i) v = exponent > 0 ? v * ten : v / ten;
  return v;
}

double parse_real(std::string_view text) {
  const auto s = trim(text);
  if (s.find('/') != std::string::npos) return parse_rational(s).convert_to<double>();
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), ErrorKind::ParseError,
          "expected a number, got '" + s + "'");
  return v;
}

template <class F>
typename F::Scalar parse_scalar(const F& f, const Json& j) {
  const std::string text = j.is_string() ? j.get<std::string>() : j.dump();
  require(j.is_string() || j.is_number(), ErrorKind::ParseError, "expected a scalar, got " + j.dump());
  if constexpr (std::is_same_v<F, PrimeField>) {
    const auto q = parse_rational(text);
    const auto num = numerator(q), den = denominator(q);
    const std::decay_t<decltype(num)> p(f.p);
    const auto a = f.from_int(static_cast<long long>(((num % p) + p) % p));
    const auto b = f.from_int(static_cast<long long>(den % p));
    return f.mul(a, f.inv(b));
  } else if constexpr (std::is_same_v<F, RationalField>) {
    return parse_rational(text);
  } else {
    return j.is_number() ? j.get<double>() : parse_real(text);
  }
}

template <class F>
Matrix<typename F::Scalar> parse_keyword(const F& f, std::size_t k, const std::string& s) {
  if (s == "0") return mat::zeros(f, k, k);
  if (s == "1" || s == "I") return mat::identity(f, k);
  if (s.size() >= 3 && s[0] == 'E') {
    std::size_t i = 0, j = 0;
    if (s.size() == 3 && std::isdigit(static_cast<unsigned char>(s[1])) &&
        std::isdigit(static_cast<unsigned char>(s[2]))) {
      i = static_cast<std::size_t>(s[1] - '0');
      j = static_cast<std::size_t>(s[2] - '0');
    } else if (const auto comma = s.find(','); comma != std::string::npos) {
      i = static_cast<std::size_t>(parse_integer(s.substr(1, comma - 1)));
      j = static_cast<std::size_t>(parse_integer(s.substr(comma + 1)));
    }
    require(i >= 1 && j >= 1 && i <= k && j <= k, ErrorKind::ParseError,
            "matrix unit '" + s + "' out of range for size " + std::to_string(k));
    return mat::unit(f, k, i - 1, j - 1);
  }
  if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
    const auto inner = s.substr(5, s.size() - 6);
    std::vector<std::string> items;
    std::size_t start = 0;
    for (std::size_t pos = 0; pos <= inner.size(); ++pos)
      if (pos == inner.size() || inner[pos] == ',') {
        items.push_back(inner.substr(start, pos - start));
        start = pos + 1;
      }
    require(items.size() == k, ErrorKind::DimensionMismatch,
            "diag needs " + std::to_string(k) + " entries, got " + std::to_string(items.size()));
    auto out = mat::zeros(f, k, k);
    for (std::size_t i = 0; i < k; ++i) out(i, i) = parse_scalar(f, Json(trim(items[i])));
    return out;
  }
  fail(ErrorKind::ParseError, "cannot read matrix literal '" + s + "'");
}

template <class F>
Matrix<typename F::Scalar> parse_matrix(const F& f, std::size_t k, const Json& literal) {
  if (literal.is_string()) {
    const auto s = trim(literal.get<std::string>());
    if (!s.empty() && s.front() == '[') {
      Json inner;
      try {
        inner = Json::parse(s);
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, "malformed matrix literal '" + s + "': " + e.what());
      }
      return parse_matrix(f, k, inner);
    }
    return parse_keyword(f, k, s);
  }
  if (literal.is_number()) {
    // A scalar stands for that multiple of the identity.
    auto out = mat::zeros(f, k, k);
    const auto s = parse_scalar(f, literal);
    for (std::size_t i = 0; i < k; ++i) out(i, i) = s;
    return out;
  }
  require(literal.is_array(), ErrorKind::ParseError, "expected a matrix, got " + literal.dump());
  require(literal.size() == k, ErrorKind::DimensionMismatch,
          "expected " + std::to_string(k) + " rows, got " + std::to_string(literal.size()));
  auto out = mat::zeros(f, k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& row = literal[i];
    require(row.is_array(), ErrorKind::ParseError, "matrix rows must be arrays");
    require(row.size() == k, ErrorKind::DimensionMismatch,
            "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " entries, expected " +
                std::to_string(k));
    for (std::size_t j = 0; j < k; ++j) out(i, j) = parse_scalar(f, row[j]);
  }
  return out;
}

template <class F>
Json scalar_to_json(const F& f, const typename F::Scalar& x) {
  if constexpr (std::is_same_v<F, RationalField>) {
    if (denominator(x) == 1) return Json(numerator(x).template convert_to<long long>());
    return Json(f.to_string(x));
  } else {
    return Json(x);
  }
}

}  // namespace

template <class R>
typename R::Elem parse_element(const R& r, const Json& literal) {
  if constexpr (std::is_same_v<R, ModularRing>) {
    if (literal.is_number_integer()) return r.make(literal.get<long long>());
    require(literal.is_string(), ErrorKind::ParseError, "expected a residue, got " + literal.dump());
    return r.make(parse_integer(literal.get<std::string>()));
  } else {
    return parse_matrix(r.field(), r.dim(), literal);
  }
}

template <class R>
Json element_to_json(const R& r, const typename R::Elem& x) {
  if constexpr (std::is_same_v<R, ModularRing>) {
    return Json(x.id);
  } else {
    Json out = Json::array();
    for (std::size_t i = 0; i < x.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < x.cols(); ++j) row.push_back(scalar_to_json(r.field(), x(i, j)));
      out.push_back(std::move(row));
    }
    return out;
  }
}

template ModularRing::Elem parse_element(const ModularRing&, const Json&);
template PrimeMatrixRing::Elem parse_element(const PrimeMatrixRing&, const Json&);
template RationalMatrixRing::Elem parse_element(const RationalMatrixRing&, const Json&);
template RealMatrixRing::Elem parse_element(const RealMatrixRing&, const Json&);
template Json element_to_json(const ModularRing&, const ModularRing::Elem&);
template Json element_to_json(const PrimeMatrixRing&, const PrimeMatrixRing::Elem&);
template Json element_to_json(const RationalMatrixRing&, const RationalMatrixRing::Elem&);
template Json element_to_json(const RealMatrixRing&, const RealMatrixRing::Elem&);

RingValue parse_value(const RingDescriptor& d, const Json& literal) {
  return with_ring(d, [&](const auto& r) {
    using R = std::decay_t<decltype(r)>;
    return wrap<R>(d, parse_element(r, literal));
  });
}

RingValue parse_value(const RingDescriptor& d, const std::string& literal) {
  return parse_value(d, Json(trim(literal)));
}

Json to_json(const RingValue& v) {
  return with_ring(v.ring, [&](const auto& r) {
    using R = std::decay_t<decltype(r)>;
    return element_to_json(r, unwrap<R>(v.ring, v));
  });
}

std::string to_string(const RingValue& v) {
  return with_ring(v.ring, [&](const auto& r) {
    using R = std::decay_t<decltype(r)>;
    return r.to_string(unwrap<R>(v.ring, v));
  });
}

ArithOp parse_arith_op(std::string_view s) {
  if (s == "add") return ArithOp::Add;
  if (s == "sub") return ArithOp::Sub;
  if (s == "mul") return ArithOp::Mul;
  if (s == "neg") return ArithOp::Neg;
  if (s == "eq") return ArithOp::Eq;
  fail(ErrorKind::ParseError, "unknown operation '" + std::string(s) + "'");
}

std::variant<RingValue, bool> ring_arith(const RingValue& x, const RingValue& y, ArithOp op) {
  require(x.ring == y.ring, ErrorKind::RingMismatch,
          "operands live in " + to_string(x.ring) + " and " + to_string(y.ring));
  return with_ring(x.ring, [&](const auto& r) -> std::variant<RingValue, bool> {
    using R = std::decay_t<decltype(r)>;
    const auto& a = unwrap<R>(x.ring, x);
    const auto& b = unwrap<R>(y.ring, y);
    switch (op) {
      case ArithOp::Add: return wrap<R>(x.ring, r.add(a, b));
      case ArithOp::Sub: return wrap<R>(x.ring, r.sub(a, b));
      case ArithOp::Mul: return wrap<R>(x.ring, r.mul(a, b));
      case ArithOp::Neg: return wrap<R>(x.ring, r.neg(a));
      case ArithOp::Eq: return r.equal(a, b);
    }
    fail(ErrorKind::ParseError, "unknown operation");
  });
}

}  // namespace bcinv
