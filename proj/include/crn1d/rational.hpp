#pragma once

// Exact rational scalars backed by GMP through Boost.Multiprecision.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crn1d {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline Integer numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denom(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? Rational(-r) : r; }

/// Largest integer not exceeding r.
inline Integer floor(const Rational& r) {
  Integer n = numer(r);
  Integer d = denom(r);
  Integer q = n / d;  // truncates toward zero
  if (n.sign() < 0 && q * d != n) q -= 1;
  return q;
}

inline Integer ceil(const Rational& r) {
  Integer f = floor(r);
  return Rational(f) == r ? f : Integer(f + 1);
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& r) {
  Integer d = denom(r);
  if (d == 1) return numer(r).str();
  return numer(r).str() + "/" + d.str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

inline Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  Integer z{std::string(s)};
  return neg ? Integer(-z) : z;
}

inline Integer pow10(unsigned n) {
  Integer z = 1;
  for (unsigned i = 0; i < n; ++i) z *= 10;
  return z;
}

}  // namespace detail

/// Parses "p", "p/q", or a decimal literal such as "-1.25" or "3e-2"; the
/// result is exact in every case.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = detail::parse_integer(trim(s.substr(0, slash)));
    Integer q = detail::parse_integer(trim(s.substr(slash + 1)));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(p, q);
  }

  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer ez = detail::parse_integer(s.substr(e + 1));
    if (ez > 10000 || ez < -10000) throw std::invalid_argument("exponent out of range");
    exp10 = ez.convert_to<long long>();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !detail::all_digits(ip)) ||
        (!fp.empty() && !detail::all_digits(fp)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long long>(fp.size());
  } else {
    if (!detail::all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Integer mant(digits.empty() ? std::string("0") : digits);
  Rational value = exp10 >= 0 ? Rational(mant * detail::pow10(static_cast<unsigned>(exp10)))
                              : Rational(mant, detail::pow10(static_cast<unsigned>(-exp10)));
  return neg ? Rational(-value) : value;
}

/// Fixed-point decimal rendering rounded half away from zero.
inline std::string to_decimal(const Rational& r, unsigned frac_digits) {
  Integer scale = detail::pow10(frac_digits);
  Rational scaled = abs(r) * scale;
  Integer rounded = floor(scaled + Rational(1, 2));
  std::string body = rounded.str();
  if (frac_digits > 0) {
    if (body.size() <= frac_digits) body.insert(0, frac_digits + 1 - body.size(), '0');
    body.insert(body.size() - frac_digits, ".");
  }
  bool negative = r.sign() < 0 && rounded != 0;
  return negative ? "-" + body : body;
}

/// Simplest rational (smallest denominator, then smallest magnitude numerator)
/// strictly inside the open interval (lo, hi). Requires lo < hi.
inline Rational simplest_between(Rational lo, Rational hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
  if (hi.sign() <= 0) return -simplest_between(-hi, -lo);
  // 0 <= lo < hi: continued-fraction descent.
  Integer fl = floor(lo);
  if (Rational(fl + 1) < hi) return Rational(fl + 1);
  // lo and hi share the integer part fl (hi may equal fl + 1 exactly).
  Rational lo_frac = lo - Rational(fl);
  Rational hi_frac = hi - Rational(fl);
  if (lo_frac.sign() == 0) {
    // Reciprocal maps (0, hi_frac) onto (1/hi_frac, +inf); its simplest point is an integer.
    Rational inner = Rational(floor(1 / hi_frac) + 1);
    return Rational(fl) + 1 / inner;
  }
  Rational inner = simplest_between(1 / hi_frac, 1 / lo_frac);
  return Rational(fl) + 1 / inner;
}

}  // namespace crn1d
