#pragma once

// Sturm-sequence real root isolation, refinement, and exact sign decisions at
// algebraic roots.

#include "crn1d/polynomial.hpp"
#include "crn1d/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crn1d {

/// Upper endpoint of a search interval: a rational or +infinity.
struct UpperBound {
  Rational value;
  bool infinite = false;

  static UpperBound inf() { return {Rational(0), true}; }
  UpperBound() = default;
  UpperBound(Rational v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  UpperBound(int v) : value(v) {}                  // NOLINT(google-explicit-constructor)
  UpperBound(Rational v, bool inf) : value(std::move(v)), infinite(inf) {}

  friend bool operator==(const UpperBound&, const UpperBound&) = default;
};

/// One distinct real root. When `lo == hi` the root is that rational exactly;
/// otherwise it is the only root of the polynomial in [lo, hi] and neither
/// endpoint is a root.
struct RootRecord {
  Rational lo;
  Rational hi;
  unsigned multiplicity = 1;
  Rational approx;

  bool exact() const { return lo == hi; }
  friend bool operator==(const RootRecord&, const RootRecord&) = default;
};

class SturmSequence {
 public:
  explicit SturmSequence(const UnivarPoly& squarefree) {
    if (squarefree.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
    seq_.push_back(squarefree);
    if (squarefree.degree() == 0) return;
    seq_.push_back(squarefree.derivative());
    while (seq_.back().degree() > 0) {
      UnivarPoly r = -(seq_[seq_.size() - 2] % seq_.back());
      if (r.is_zero()) break;
      seq_.push_back(std::move(r));
    }
  }

  int variations_at(const Rational& t) const {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq_) {
      int s = sign(p(t));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  int variations_at_pos_inf() const {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq_) {
      int s = sign(p.lead());
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  /// Number of distinct roots in the open interval (lo, hi).
  std::size_t count_open(const Rational& lo, const Rational& hi) const {
    if (!(lo < hi)) return 0;
    int n = variations_at(lo) - variations_at(hi);
    if (seq_.front()(hi).sign() == 0) --n;
    return static_cast<std::size_t>(std::max(n, 0));
  }

  /// Number of distinct roots in (lo, +inf).
  std::size_t count_above(const Rational& lo) const {
    int n = variations_at(lo) - variations_at_pos_inf();
    return static_cast<std::size_t>(std::max(n, 0));
  }

  const UnivarPoly& base() const { return seq_.front(); }

 private:
  std::vector<UnivarPoly> seq_;
};

/// Every real root of p lies strictly inside (-B, B).
inline Rational cauchy_bound(const UnivarPoly& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, abs(p.coeff(static_cast<std::size_t>(k)) / p.lead()));
  return m + 1;
}

namespace detail {

/// Leading coefficient of the primitive integer polynomial proportional to p.
inline Integer primitive_lead(const UnivarPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coefficients()) l = boost::multiprecision::lcm(l, denom(c));
  Integer g = 0;
  for (const auto& c : p.coefficients()) g = boost::multiprecision::gcd(g, Integer(numer(c) * (l / denom(c))));
  Integer lead = numer(p.lead()) * (l / denom(p.lead())) / g;
  return lead.sign() < 0 ? Integer(-lead) : lead;
}

/// Halves an isolating interval of a simple root of square-free s, or collapses
/// it when the midpoint is the root.
inline void bisect_step(const UnivarPoly& s, RootRecord& rec) {
  Rational mid = (rec.lo + rec.hi) / 2;
  int sm = sign(s(mid));
  if (sm == 0) {
    rec.lo = rec.hi = mid;
    return;
  }
  if (sign(s(rec.lo)) == sm)
    rec.lo = mid;
  else
    rec.hi = mid;
}

/// Detects a rational root hiding in a nondegenerate isolating interval:
/// shrink below 1/L^2 then test the simplest rational inside.
inline void try_exactify(const UnivarPoly& s, RootRecord& rec) {
  if (rec.exact()) return;
  Integer L = primitive_lead(s);
  Rational width_cap(Integer(1), Integer(L * L));
  while (!rec.exact() && rec.hi - rec.lo >= width_cap) bisect_step(s, rec);
  if (rec.exact()) return;
  Rational candidate = simplest_between(rec.lo, rec.hi);
  if (s(candidate).sign() == 0) rec.lo = rec.hi = candidate;
}

}  // namespace detail

/// All distinct real roots of p in the open interval (lo, hi), ascending, with
/// multiplicities from the square-free decomposition.
inline std::vector<RootRecord> isolate_roots(const UnivarPoly& p, const Rational& lo, const UpperBound& hi) {
  if (p.is_zero()) throw std::domain_error("isolate_roots of the zero polynomial");
  if (!hi.infinite && !(lo < hi.value)) throw std::invalid_argument("isolate_roots: empty interval");
  std::vector<RootRecord> out;
  if (p.degree() <= 0) return out;

  const UnivarPoly s = squarefree_kernel(p);
  const SturmSequence sturm(s);
  Rational top = hi.infinite ? std::max(lo, cauchy_bound(s)) + 1 : hi.value;

  struct Span {
    Rational a, b;
  };
  std::vector<Span> stack{{lo, top}};
  std::vector<RootRecord> found;
  while (!stack.empty()) {
    Span sp = stack.back();
    stack.pop_back();
    std::size_t n = sturm.count_open(sp.a, sp.b);
    if (n == 0) continue;
    if (n == 1 && s(sp.a).sign() != 0 && s(sp.b).sign() != 0) {
      found.push_back({sp.a, sp.b, 1, (sp.a + sp.b) / 2});
      continue;
    }
    Rational mid = (sp.a + sp.b) / 2;
    if (s(mid).sign() == 0) found.push_back({mid, mid, 1, mid});
    stack.push_back({sp.a, mid});
    stack.push_back({mid, sp.b});
  }

  const auto parts = squarefree_parts(p);
  for (auto& rec : found) {
    detail::try_exactify(s, rec);
    rec.approx = (rec.lo + rec.hi) / 2;
    for (const auto& part : parts) {
      bool hit = rec.exact() ? part.part(rec.lo).sign() == 0
                             : SturmSequence(part.part).count_open(rec.lo, rec.hi) == 1;
      if (hit) {
        rec.multiplicity = part.multiplicity;
        break;
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const RootRecord& x, const RootRecord& y) { return x.lo < y.lo; });
  return found;
}

/// Bisects the record on the square-free part of p until hi - lo <= tol.
inline RootRecord refine(const UnivarPoly& p, RootRecord rec, const Rational& tol) {
  if (tol.sign() <= 0) throw std::invalid_argument("refine: tolerance must be positive");
  if (rec.exact()) return rec;
  const UnivarPoly s = squarefree_kernel(p);
  while (!rec.exact() && rec.hi - rec.lo > tol) detail::bisect_step(s, rec);
  rec.approx = (rec.lo + rec.hi) / 2;
  return rec;
}

/// A real algebraic number: the unique root of a square-free polynomial inside
/// an isolating record.
class AlgebraicRoot {
 public:
  AlgebraicRoot(UnivarPoly squarefree, RootRecord rec) : s_(std::move(squarefree)), rec_(std::move(rec)) {}
  /// Wraps a record produced by isolate_roots(p, ...).
  static AlgebraicRoot of(const UnivarPoly& p, const RootRecord& rec) { return {squarefree_kernel(p), rec}; }
  static AlgebraicRoot rational(const Rational& r) {
    return {UnivarPoly::linear(1, -r), RootRecord{r, r, 1, r}};
  }

  const RootRecord& record() const { return rec_; }
  const UnivarPoly& squarefree() const { return s_; }
  bool exact() const { return rec_.exact(); }

  void bisect() { detail::bisect_step(s_, rec_); }

  void refine_to(const Rational& tol) {
    while (!rec_.exact() && rec_.hi - rec_.lo > tol) bisect();
    rec_.approx = (rec_.lo + rec_.hi) / 2;
  }

  Rational approx(const Rational& tol) {
    refine_to(tol);
    return rec_.approx;
  }

  /// Exact sign of f at this root.
  int sign_of(const UnivarPoly& f) {
    if (f.is_zero()) return 0;
    if (rec_.exact()) return sign(f(rec_.lo));
    if (f.degree() == 0) return sign(f.lead());
    UnivarPoly g = gcd(f, s_);
    if (g.degree() > 0 && SturmSequence(g).count_open(rec_.lo, rec_.hi) > 0) return 0;
    const SturmSequence fs(squarefree_kernel(f));
    while (true) {
      if (rec_.exact()) return sign(f(rec_.lo));
      int at_lo = sign(f(rec_.lo));
      if (at_lo != 0 && fs.count_open(rec_.lo, rec_.hi) == 0) return at_lo;
      bisect();
    }
  }

  /// -1, 0, +1 as this root is below, equal to, or above `other`.
  int compare(AlgebraicRoot other) const {
    AlgebraicRoot self = *this;
    UnivarPoly g = gcd(self.s_, other.s_);
    bool may_equal = g.degree() > 0;
    while (true) {
      if (self.rec_.hi < other.rec_.lo) return -1;
      if (other.rec_.hi < self.rec_.lo) return 1;
      if (self.exact() && other.exact()) return 0;  // overlapping degenerate records coincide
      if (may_equal) {
        Rational a = std::max(self.rec_.lo, other.rec_.lo);
        Rational b = std::min(self.rec_.hi, other.rec_.hi);
        bool common = a == b ? g(a).sign() == 0
                             : (g(a).sign() == 0 || g(b).sign() == 0 || SturmSequence(g).count_open(a, b) > 0);
        if (common) return 0;
      }
      if (self.rec_.hi - self.rec_.lo >= other.rec_.hi - other.rec_.lo)
        self.bisect();
      else
        other.bisect();
    }
  }

  /// -1, 0, +1 comparing with a rational.
  int compare(const Rational& r) const { return compare(AlgebraicRoot::rational(r)); }

 private:
  UnivarPoly s_;
  RootRecord rec_;
};

}  // namespace crn1d
