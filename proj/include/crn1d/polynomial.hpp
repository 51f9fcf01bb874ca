#pragma once

// Dense univariate polynomials over Q.

#include "crn1d/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crn1d {

/// Coefficients are stored constant term first and kept trimmed, so the zero
/// polynomial has no coefficients and `lead()` is nonzero otherwise.
class UnivarPoly {
 public:
  UnivarPoly() = default;
  UnivarPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c.sign() != 0) coeffs_.push_back(c);
  }
  UnivarPoly(int c) : UnivarPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit UnivarPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  UnivarPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  /// The monomial x.
  static UnivarPoly x() { return UnivarPoly({Rational(0), Rational(1)}); }
  /// a*x + b.
  static UnivarPoly linear(const Rational& a, const Rational& b) { return UnivarPoly({b, a}); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& lead() const { return coeffs_.back(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  Rational operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  double eval_double(double at) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + to_double(*it);
    return acc;
  }

  UnivarPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<long>(k));
    return UnivarPoly(std::move(d));
  }

  UnivarPoly monic() const {
    if (is_zero()) return *this;
    UnivarPoly out = *this;
    Rational lc = lead();
    for (auto& c : out.coeffs_) c /= lc;
    return out;
  }

  UnivarPoly operator-() const {
    UnivarPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  UnivarPoly& operator+=(const UnivarPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  UnivarPoly& operator-=(const UnivarPoly& o) { return *this += -o; }
  UnivarPoly& operator*=(const UnivarPoly& o) { return *this = *this * o; }

  friend UnivarPoly operator+(UnivarPoly a, const UnivarPoly& b) { return a += b; }
  friend UnivarPoly operator-(UnivarPoly a, const UnivarPoly& b) { return a -= b; }
  friend UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UnivarPoly(std::move(out));
  }

  /// Euclidean division: returns (quotient, remainder) with deg r < deg d.
  friend std::pair<UnivarPoly, UnivarPoly> divmod(const UnivarPoly& n, const UnivarPoly& d) {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = n.coeffs_;
    const int dd = d.degree();
    if (n.degree() < dd) return {UnivarPoly{}, n};
    std::vector<Rational> quot(static_cast<std::size_t>(n.degree() - dd + 1));
    for (int k = n.degree() - dd; k >= 0; --k) {
      Rational c = rem[static_cast<std::size_t>(k + dd)] / d.lead();
      quot[static_cast<std::size_t>(k)] = c;
      if (c.sign() == 0) continue;
      for (int i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k + i)] -= c * d.coeffs_[static_cast<std::size_t>(i)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {UnivarPoly(std::move(quot)), UnivarPoly(std::move(rem))};
  }

  /// Exact quotient; the remainder must vanish.
  friend UnivarPoly operator/(const UnivarPoly& n, const UnivarPoly& d) {
    auto [q, r] = divmod(n, d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }
  friend UnivarPoly operator%(const UnivarPoly& n, const UnivarPoly& d) { return divmod(n, d).second; }

  friend bool operator==(const UnivarPoly&, const UnivarPoly&) = default;

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = coeffs_[static_cast<std::size_t>(k)];
      if (c.sign() == 0) continue;
      Rational mag = abs(c);
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      bool unit = mag == 1 && k > 0;
      if (!unit) {
        std::string m = crn1d::to_string(mag);
        out += (k > 0 && m.find('/') != std::string::npos) ? "(" + m + ")" : m;
        if (k > 0) out += "*";
      }
      if (k >= 1) out += var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().sign() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const UnivarPoly& p) { return os << p.to_string(); }

inline UnivarPoly pow(const UnivarPoly& base, unsigned exponent) {
  UnivarPoly result = 1;
  UnivarPoly b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent) b *= b;
  }
  return result;
}

/// Monic gcd; gcd(0, 0) = 0.
inline UnivarPoly gcd(UnivarPoly a, UnivarPoly b) {
  while (!b.is_zero()) {
    UnivarPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Values p(x), p'(x), ..., p^(k)(x).
inline std::vector<Rational> eval_and_derivatives(const UnivarPoly& p, const Rational& x, unsigned k) {
  std::vector<Rational> out;
  out.reserve(k + 1);
  UnivarPoly d = p;
  for (unsigned i = 0; i <= k; ++i) {
    out.push_back(d(x));
    d = d.derivative();
  }
  return out;
}

/// A square-free factor together with the exponent it carries in the input.
struct SquarefreePart {
  UnivarPoly part;
  unsigned multiplicity;
  friend bool operator==(const SquarefreePart&, const SquarefreePart&) = default;
};

/// Yun's decomposition: p = lead(p) * prod part_k^k with monic, square-free,
/// pairwise coprime parts. Constant parts are omitted.
inline std::vector<SquarefreePart> squarefree_parts(const UnivarPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_parts of the zero polynomial");
  std::vector<SquarefreePart> out;
  if (p.degree() == 0) return out;
  UnivarPoly dp = p.derivative();
  UnivarPoly a = gcd(p, dp);
  UnivarPoly b = p / a;
  UnivarPoly c = dp / a;
  UnivarPoly d = c - b.derivative();
  unsigned k = 1;
  while (b.degree() > 0) {
    UnivarPoly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, k});
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++k;
  }
  return out;
}

/// Product of the distinct monic irreducible factors, i.e. p / gcd(p, p').
inline UnivarPoly squarefree_kernel(const UnivarPoly& p) {
  if (p.degree() <= 0) return UnivarPoly(1);
  return (p / gcd(p, p.derivative())).monic();
}

}  // namespace crn1d
