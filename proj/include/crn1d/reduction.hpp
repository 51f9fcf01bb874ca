#pragma once

// Reduction of the steady-state system of a rank-one network, for a fixed
// total-constant vector c, to a univariate polynomial q in x_1.
//
// With x_i = A_i x_1 + B_i on the compatibility class, species are grouped by
// the ratio B_i/A_i (all A_i = 0 species form one group). Each group k
// contributes the forced factor Y_k^phi_k to g, and q collects the rest:
//
//   q(kappa; x_1) = (beta_11 - alpha_11) sum_j lambda_j kappa_j C_j prod_{k in H} Y_k(x_1)^gamma_kj.

#include "crn1d/errors.hpp"
#include "crn1d/network.hpp"
#include "crn1d/polynomial.hpp"
#include "crn1d/rational.hpp"
#include "crn1d/roots.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crn1d {

/// Open interval (lo, hi) with hi possibly +infinity.
struct OpenInterval {
  Rational lo;
  UpperBound hi = UpperBound::inf();

  bool empty() const { return !hi.infinite && hi.value <= lo; }
  bool contains(const Rational& x) const { return lo < x && (hi.infinite || x < hi.value); }

  friend OpenInterval intersect(const OpenInterval& a, const OpenInterval& b) {
    OpenInterval out{std::max(a.lo, b.lo), a.hi};
    if (out.hi.infinite || (!b.hi.infinite && b.hi.value < out.hi.value)) out.hi = b.hi;
    return out;
  }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Combinatorial data for one (network, c) pair. Indices are 0-based.
struct ReducedSystem {
  Network network;
  std::vector<Rational> c;
  std::vector<Rational> lambda;
  std::vector<Rational> A;
  std::vector<Rational> B;
  std::vector<std::size_t> class_of;         // representative of each species' class
  std::vector<std::size_t> representatives;  // ascending; smallest member of each class
  std::vector<int> phi;                      // aligned with representatives
  std::vector<std::vector<int>> gamma;       // representatives x reactions
  std::vector<std::size_t> J;
  std::vector<std::size_t> H;
  std::vector<OpenInterval> intervals;  // I_i per species
  OpenInterval I;                       // intersection over H
  OpenInterval admissible;              // where every x_i = A_i x_1 + B_i is positive
  std::size_t tau = 0;
  std::size_t ell = 0;
  std::vector<std::size_t> L;
  std::vector<Rational> C;

  std::size_t r() const { return representatives.size(); }

  /// Position of representative k inside `representatives`.
  std::size_t rep_slot(std::size_t k) const {
    auto it = std::lower_bound(representatives.begin(), representatives.end(), k);
    return static_cast<std::size_t>(it - representatives.begin());
  }
  const std::vector<int>& gamma_row(std::size_t k) const { return gamma[rep_slot(class_of[k])]; }
  bool in_H(std::size_t k) const { return std::binary_search(H.begin(), H.end(), k); }
  std::vector<std::size_t> class_members(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < class_of.size(); ++i)
      if (class_of[i] == class_of[k]) out.push_back(i);
    return out;
  }
};

namespace detail {

/// Everything up to (but excluding) tau and ell; never throws on empty H.
inline ReducedSystem reduce_structure(const Network& net, std::span<const Rational> c) {
  if (c.size() + 1 != net.s())
    throw DimensionMismatch("expected " + std::to_string(net.s() - 1) + " total constants, got " +
                            std::to_string(c.size()));
  if (net.delta(0, 0) == 0) throw DimensionMismatch("species 1 is unchanged by reaction 1");
  StoichData sd = stoich_data(net);
  assert_one_dimensional(sd);

  ReducedSystem rs;
  rs.network = net;
  rs.c.assign(c.begin(), c.end());
  rs.lambda = sd.lambda;
  const std::size_t s = net.s(), m = net.m();
  const Rational d11 = net.delta(0, 0);

  rs.A.assign(s, Rational(0));
  rs.B.assign(s, Rational(0));
  rs.A[0] = 1;
  for (std::size_t i = 1; i < s; ++i) {
    rs.A[i] = Rational(net.delta(i, 0)) / d11;
    rs.B[i] = -c[i - 1] / d11;
  }

  rs.class_of.assign(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    std::size_t k = 0;
    for (; k < i; ++k) {
      bool same = rs.A[i].sign() == 0 ? rs.A[k].sign() == 0
                                      : rs.A[k].sign() != 0 && rs.B[k] / rs.A[k] == rs.B[i] / rs.A[i];
      if (same) break;
    }
    rs.class_of[i] = k == i ? i : rs.class_of[k];
    if (k == i) rs.representatives.push_back(i);
  }

  for (std::size_t k : rs.representatives) {
    std::vector<int> sums(m, 0);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < s; ++i)
        if (rs.class_of[i] == k) sums[j] += net.alpha(i, j);
    int low = *std::min_element(sums.begin(), sums.end());
    for (auto& v : sums) v -= low;
    rs.phi.push_back(low);
    rs.gamma.push_back(std::move(sums));
  }

  for (std::size_t i = 0; i < s; ++i)
    if (rs.A[i].sign() != 0) rs.J.push_back(i);
  for (std::size_t slot = 0; slot < rs.representatives.size(); ++slot) {
    std::size_t k = rs.representatives[slot];
    const auto& row = rs.gamma[slot];
    bool varies = std::any_of(row.begin(), row.end(), [](int g) { return g != 0; });
    if (rs.A[k].sign() != 0 && varies) rs.H.push_back(k);
  }

  rs.admissible = OpenInterval{Rational(0), UpperBound::inf()};
  bool constant_nonpositive = false;
  for (std::size_t i = 0; i < s; ++i) {
    OpenInterval Ii;
    if (rs.A[i].sign() > 0)
      Ii = {-rs.B[i] / rs.A[i], UpperBound::inf()};
    else if (rs.A[i].sign() == 0)
      Ii = {Rational(0), UpperBound::inf()};
    else
      Ii = {Rational(0), UpperBound(-rs.B[i] / rs.A[i])};
    rs.intervals.push_back(Ii);
    rs.admissible = intersect(rs.admissible, Ii);
    if (rs.A[i].sign() == 0 && rs.B[i].sign() <= 0) constant_nonpositive = true;
  }
  if (constant_nonpositive) rs.admissible.hi = UpperBound(rs.admissible.lo);

  if (!rs.H.empty()) {
    rs.I = rs.intervals[rs.H.front()];
    for (std::size_t k : rs.H) rs.I = intersect(rs.I, rs.intervals[k]);
  }

  for (std::size_t j = 0; j < m; ++j) {
    Rational cj = 1;
    for (std::size_t i = 0; i < s; ++i) {
      unsigned a = static_cast<unsigned>(net.alpha(i, j));
      cj *= rs.A[i].sign() != 0 ? pow(abs(rs.A[i]), a) : pow(rs.B[i], a);
    }
    rs.C.push_back(cj);
  }
  return rs;
}

}  // namespace detail

/// All combinatorial data for (net, c). Throws HEmpty when H is empty and
/// NoTau when no k in H with A_k > 0 sits at the left end of I.
inline ReducedSystem reduce(const Network& net, std::span<const Rational> c) {
  ReducedSystem rs = detail::reduce_structure(net, c);
  if (rs.H.empty()) throw HEmpty();
  std::optional<std::size_t> tau;
  for (std::size_t k : rs.H)
    if (rs.A[k].sign() > 0 && -rs.B[k] / rs.A[k] == rs.I.lo) {
      tau = k;
      break;
    }
  if (!tau) throw NoTau();
  rs.tau = *tau;
  const auto& row = rs.gamma_row(rs.tau);
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] == 0) rs.L.push_back(j);
  rs.ell = rs.L.front();
  return rs;
}

inline ReducedSystem reduce(const Network& net, const std::vector<Rational>& c) {
  return reduce(net, std::span<const Rational>(c));
}

/// Y_k(x_1) = (A_k x_1 + B_k)/|A_k| for k in J, and 1 otherwise.
inline UnivarPoly Y_poly(const ReducedSystem& rs, std::size_t k) {
  if (rs.A[k].sign() == 0) return UnivarPoly(1);
  Rational mag = abs(rs.A[k]);
  return UnivarPoly::linear(rs.A[k] / mag, rs.B[k] / mag);
}

/// P_j(x_1) = C_j prod_{k in H} Y_k(x_1)^gamma_kj.
inline UnivarPoly P_poly(const ReducedSystem& rs, std::size_t j) {
  UnivarPoly p = rs.C[j];
  for (std::size_t k : rs.H) p *= pow(Y_poly(rs, k), static_cast<unsigned>(rs.gamma_row(k)[j]));
  return p;
}

struct QPolynomial {
  UnivarPoly poly;
  std::vector<Rational> kappa;
  std::vector<Rational> c;
  int degree_bound = 0;  // max_j sum_{k in H} gamma_kj
};

namespace detail {

inline void check_kappa(const Network& net, std::span<const Rational> kappa) {
  if (kappa.size() != net.m())
    throw DimensionMismatch("expected " + std::to_string(net.m()) + " rate constants, got " +
                            std::to_string(kappa.size()));
  for (const auto& k : kappa)
    if (k.sign() <= 0) throw DimensionMismatch("rate constants must be positive");
}

}  // namespace detail

inline QPolynomial build_q(const ReducedSystem& rs, std::span<const Rational> kappa) {
  detail::check_kappa(rs.network, kappa);
  QPolynomial q;
  q.kappa.assign(kappa.begin(), kappa.end());
  q.c = rs.c;
  const Rational d11 = rs.network.delta(0, 0);
  for (std::size_t j = 0; j < rs.network.m(); ++j) {
    q.poly += P_poly(rs, j) * (d11 * rs.lambda[j] * kappa[j]);
    int deg = 0;
    for (std::size_t k : rs.H) deg += rs.gamma_row(k)[j];
    q.degree_bound = std::max(q.degree_bound, deg);
  }
  return q;
}

inline QPolynomial build_q(const ReducedSystem& rs, const std::vector<Rational>& kappa) {
  return build_q(rs, std::span<const Rational>(kappa));
}

/// h_1 restricted to the compatibility class, straight from the mass-action
/// terms: (beta_11 - alpha_11) sum_j lambda_j kappa_j prod_k (A_k x_1 + B_k)^alpha_kj.
inline UnivarPoly build_g(const Network& net, std::span<const Rational> kappa, std::span<const Rational> c) {
  detail::check_kappa(net, kappa);
  if (c.size() + 1 != net.s()) throw DimensionMismatch("expected " + std::to_string(net.s() - 1) + " total constants");
  StoichData sd = stoich_data(net);
  assert_one_dimensional(sd);
  const Rational d11 = net.delta(0, 0);
  if (d11 == 0) throw DimensionMismatch("species 1 is unchanged by reaction 1");
  std::vector<UnivarPoly> xs{UnivarPoly::x()};
  for (std::size_t k = 1; k < net.s(); ++k) xs.push_back(UnivarPoly::linear(net.delta(k, 0) / d11, -c[k - 1] / d11));
  UnivarPoly g;
  for (std::size_t j = 0; j < net.m(); ++j) {
    UnivarPoly term = d11 * sd.lambda[j] * kappa[j];
    for (std::size_t k = 0; k < net.s(); ++k) term *= pow(xs[k], static_cast<unsigned>(net.alpha(k, j)));
    g += term;
  }
  return g;
}

inline UnivarPoly build_g(const Network& net, const std::vector<Rational>& kappa, const std::vector<Rational>& c) {
  return build_g(net, std::span<const Rational>(kappa), std::span<const Rational>(c));
}

/// prod_{k representative} Y_k^phi_k, the factor separating g from q.
inline UnivarPoly forced_factor(const ReducedSystem& rs) {
  UnivarPoly f = 1;
  for (std::size_t slot = 0; slot < rs.representatives.size(); ++slot)
    f *= pow(Y_poly(rs, rs.representatives[slot]), static_cast<unsigned>(rs.phi[slot]));
  return f;
}

/// Numerator and denominator of phi(kappa_hat; x_1) = -N(x_1) / D(x_1) with
/// N = sum_{j != ell} lambda_j kappa_j P_j and D = lambda_ell P_ell. Entries of
/// kappa at position ell are ignored.
struct PhiFunction {
  UnivarPoly numerator;  // -N
  UnivarPoly denominator;
};

inline PhiFunction phi_function(const ReducedSystem& rs, std::span<const Rational> kappa_full) {
  if (kappa_full.size() != rs.network.m()) throw DimensionMismatch("expected one rate constant per reaction");
  PhiFunction f;
  for (std::size_t j = 0; j < rs.network.m(); ++j)
    if (j != rs.ell) f.numerator -= P_poly(rs, j) * (rs.lambda[j] * kappa_full[j]);
  f.denominator = P_poly(rs, rs.ell) * rs.lambda[rs.ell];
  return f;
}

/// Expands kappa_hat (every rate constant except kappa_ell, in order) to a full
/// vector with a placeholder at ell.
inline std::vector<Rational> expand_kappa_hat(const ReducedSystem& rs, std::span<const Rational> kappa_hat) {
  if (kappa_hat.size() + 1 != rs.network.m())
    throw DimensionMismatch("kappa_hat needs " + std::to_string(rs.network.m() - 1) + " entries");
  std::vector<Rational> full;
  for (std::size_t j = 0, h = 0; j < rs.network.m(); ++j) full.push_back(j == rs.ell ? Rational(0) : kappa_hat[h++]);
  return full;
}

/// Value of kappa_ell that makes x1 a root of q, given the other constants.
inline Rational phi_eval(const ReducedSystem& rs, std::span<const Rational> kappa_hat, const Rational& x1) {
  std::vector<Rational> full = expand_kappa_hat(rs, kappa_hat);
  PhiFunction f = phi_function(rs, full);
  Rational den = f.denominator(x1);
  if (den.sign() == 0) throw NotWellDefined("x1 = " + to_string(x1));
  return f.numerator(x1) / den;
}

inline Rational phi_eval(const ReducedSystem& rs, const std::vector<Rational>& kappa_hat, const Rational& x1) {
  return phi_eval(rs, std::span<const Rational>(kappa_hat), x1);
}

struct Assumption2Result {
  Network network;
  std::vector<Rational> c;
  Permutation permutation;
};

/// Relabels species so that species 1 belongs to H. When 1 is already in H the
/// inputs come back unchanged; otherwise species 1 is swapped with `preferred`
/// (which must lie in H) or with the smallest index of H, and c is recomputed
/// from a point of the same compatibility class.
inline Assumption2Result enforce_assumption2(const Network& net, std::span<const Rational> c,
                                             std::optional<std::size_t> preferred = std::nullopt) {
  ReducedSystem rs = detail::reduce_structure(net, c);
  if (rs.H.empty()) throw HEmpty();
  if (rs.in_H(0)) return {net, std::vector<Rational>(c.begin(), c.end()), identity_permutation(net.s())};
  std::size_t k = rs.H.front();
  if (preferred) {
    if (!rs.in_H(*preferred)) throw DimensionMismatch("requested species is not in H");
    k = *preferred;
  }
  Permutation p = transposition(net.s(), 0, k);
  Network swapped = permute_species(net, p);
  std::vector<Rational> x = class_point(net, c);
  std::vector<Rational> xs = permute_vector<Rational>(x, p);
  return {swapped, conservation_constants<Rational>(swapped, xs), p};
}

inline Assumption2Result enforce_assumption2(const Network& net, const std::vector<Rational>& c,
                                             std::optional<std::size_t> preferred = std::nullopt) {
  return enforce_assumption2(net, std::span<const Rational>(c), preferred);
}

}  // namespace crn1d
