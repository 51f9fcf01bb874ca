#pragma once

// Positive steady states, their stability, and the sign condition that decides
// the maximal number of stable steady states.

#include "crn1d/errors.hpp"
#include "crn1d/network.hpp"
#include "crn1d/polynomial.hpp"
#include "crn1d/rational.hpp"
#include "crn1d/reduction.hpp"
#include "crn1d/roots.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crn1d {

struct SteadyState {
  std::vector<Rational> x;  // exact when x1.exact(), otherwise from the refined midpoint
  RootRecord x1;
  bool nondegenerate = false;
  std::optional<bool> stable;  // unset for degenerate states
  unsigned multiplicity = 0;
  int q_prime_sign = 0;

  bool exact() const { return x1.exact(); }
};

struct EnumerationOptions {
  Rational tolerance = Rational(1, Integer(1) << 100);
};

/// The reduced system, q, and the states it yields, kept together so that
/// callers can revisit the exact roots.
struct SteadyStateSet {
  ReducedSystem rs;
  QPolynomial q;
  UnivarPoly q_squarefree;
  std::vector<SteadyState> states;

  AlgebraicRoot root(std::size_t i) const { return {q_squarefree, states[i].x1}; }
};

/// Roots of q in the admissible interval, mapped to x_i = A_i x_1 + B_i.
inline SteadyStateSet enumerate_steady_states(const ReducedSystem& rs, std::span<const Rational> kappa,
                                              const EnumerationOptions& opts = {}) {
  SteadyStateSet out{rs, build_q(rs, kappa), {}, {}};
  const UnivarPoly& q = out.q.poly;
  if (rs.admissible.empty()) return out;
  if (q.is_zero()) throw InfinitelyMany();
  if (q.degree() == 0) return out;
  out.q_squarefree = squarefree_kernel(q);
  const UnivarPoly dq = q.derivative();
  for (RootRecord rec : isolate_roots(q, rs.admissible.lo, rs.admissible.hi)) {
    rec = refine(q, rec, opts.tolerance);
    SteadyState st;
    st.x1 = rec;
    st.multiplicity = rec.multiplicity;
    st.nondegenerate = rec.multiplicity == 1;
    AlgebraicRoot root(out.q_squarefree, rec);
    st.q_prime_sign = st.nondegenerate ? root.sign_of(dq) : 0;
    if (st.nondegenerate) st.stable = st.q_prime_sign < 0;
    for (std::size_t i = 0; i < rs.network.s(); ++i) st.x.push_back(rs.A[i] * rec.approx + rs.B[i]);
    out.states.push_back(std::move(st));
  }
  return out;
}

inline SteadyStateSet enumerate_steady_states(const Network& net, std::span<const Rational> kappa,
                                              std::span<const Rational> c, const EnumerationOptions& opts = {}) {
  return enumerate_steady_states(reduce(net, c), kappa, opts);
}

inline SteadyStateSet enumerate_steady_states(const Network& net, const std::vector<Rational>& kappa,
                                              const std::vector<Rational>& c, const EnumerationOptions& opts = {}) {
  return enumerate_steady_states(net, std::span<const Rational>(kappa), std::span<const Rational>(c), opts);
}

struct BCondition {
  Rational value;
  bool positive = false;
};

/// sum_{j in L} (beta_1j - alpha_1j) kappa_j C_j prod_{k in H, k != tau}
/// (B_k/|A_k| - (A_k/|A_k|) B_tau/A_tau)^gamma_kj, which equals q(kappa; a) at
/// the left endpoint a = -B_tau/A_tau.
inline BCondition b_condition(const ReducedSystem& rs, std::span<const Rational> kappa) {
  detail::check_kappa(rs.network, kappa);
  const Rational ratio = rs.B[rs.tau] / rs.A[rs.tau];
  Rational total = 0;
  for (std::size_t j : rs.L) {
    Rational term = Rational(rs.network.delta(0, j)) * kappa[j] * rs.C[j];
    for (std::size_t k : rs.H) {
      if (k == rs.tau) continue;
      Rational mag = abs(rs.A[k]);
      Rational base = rs.B[k] / mag - (rs.A[k] / mag) * ratio;
      term *= pow(base, static_cast<unsigned>(rs.gamma_row(k)[j]));
    }
    total += term;
  }
  return {total, total.sign() > 0};
}

inline BCondition b_condition(const ReducedSystem& rs, const std::vector<Rational>& kappa) {
  return b_condition(rs, std::span<const Rational>(kappa));
}

/// Sign of (gamma_tau2 - gamma_tau1)(beta_tau1 - alpha_tau1) for a two-reaction
/// network; when tau is alone in its class the coefficient form
/// (alpha_tau2 - alpha_tau1)(beta_tau1 - alpha_tau1) must agree.
inline int two_reaction_shortcut(const ReducedSystem& rs) {
  const Network& net = rs.network;
  if (net.m() != 2) throw NotTwoReactions(net.m());
  const auto& row = rs.gamma_row(rs.tau);
  const int d = net.delta(rs.tau, 0);
  const int by_gamma = (row[1] - row[0]) * d;
  const int s = (by_gamma > 0) - (by_gamma < 0);
  if (rs.class_members(rs.tau).size() == 1) {
    const int by_alpha = (net.alpha(rs.tau, 1) - net.alpha(rs.tau, 0)) * d;
    const int s2 = (by_alpha > 0) - (by_alpha < 0);
    if (s != s2) throw std::logic_error("two-reaction shortcut forms disagree");
  }
  return s;
}

inline int two_reaction_shortcut(const Network& net, std::span<const Rational> c) {
  if (net.m() != 2) throw NotTwoReactions(net.m());
  return two_reaction_shortcut(reduce(net, c));
}

inline int two_reaction_shortcut(const Network& net, const std::vector<Rational>& c) {
  return two_reaction_shortcut(net, std::span<const Rational>(c));
}

/// Maximum number of stable steady states, possibly bracketed: lo == hi when
/// determined.
struct CapStab {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool determined() const { return lo == hi; }
  friend bool operator==(const CapStab&, const CapStab&) = default;
};

/// Even N gives N/2; odd N gives (N+1)/2 when some witness lies in B,
/// (N-1)/2 when none does, and both values when unknown.
inline CapStab cap_stab_formula(std::size_t cap_pos, std::optional<bool> wb_nonempty) {
  if (cap_pos % 2 == 0) return {cap_pos / 2, cap_pos / 2};
  if (!wb_nonempty) return {(cap_pos - 1) / 2, (cap_pos + 1) / 2};
  std::size_t v = *wb_nonempty ? (cap_pos + 1) / 2 : (cap_pos - 1) / 2;
  return {v, v};
}

struct StabilityVerdict {
  std::size_t cap_pos_witnessed = 0;
  std::size_t stable_count = 0;
  Rational b_value;
  bool b_positive = false;
  std::optional<int> two_reaction_sign;
  CapStab cap_stab_if_maximal;
  bool alternating_signs = true;
  bool all_nondegenerate = true;
  int q_degree = -1;
  int degree_bound = 0;
};

struct Analysis {
  SteadyStateSet set;
  StabilityVerdict verdict;
};

inline Analysis analyze_full(const Network& net, std::span<const Rational> kappa, std::span<const Rational> c,
                             const EnumerationOptions& opts = {}) {
  Analysis a{enumerate_steady_states(net, kappa, c, opts), {}};
  const auto& states = a.set.states;
  StabilityVerdict& v = a.verdict;
  v.cap_pos_witnessed = states.size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].stable.value_or(false)) ++v.stable_count;
    if (!states[i].nondegenerate) v.all_nondegenerate = false;
  }
  // Consecutive simple roots must alternate in the sign of q'; a degenerate
  // root contributes q' = 0, which satisfies the non-strict form.
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    int prod = states[i].q_prime_sign * states[i + 1].q_prime_sign;
    if (prod > 0 || (v.all_nondegenerate && prod == 0)) v.alternating_signs = false;
  }
  BCondition b = b_condition(a.set.rs, kappa);
  v.b_value = b.value;
  v.b_positive = b.positive;
  std::optional<bool> wb_nonempty;
  if (b.positive) wb_nonempty = true;
  if (net.m() == 2) {
    v.two_reaction_sign = two_reaction_shortcut(a.set.rs);
    // A does not depend on c. With a single species of positive A, tau and its
    // gamma row are the same for every class, so the sign decides W and B.
    const auto& A = a.set.rs.A;
    if (std::count_if(A.begin(), A.end(), [](const Rational& r) { return r.sign() > 0; }) == 1)
      wb_nonempty = *v.two_reaction_sign > 0;
  }
  v.cap_stab_if_maximal = cap_stab_formula(states.size(), wb_nonempty);
  v.q_degree = a.set.q.poly.degree();
  v.degree_bound = a.set.q.degree_bound;
  return a;
}

inline Analysis analyze_full(const Network& net, const std::vector<Rational>& kappa, const std::vector<Rational>& c,
                             const EnumerationOptions& opts = {}) {
  return analyze_full(net, std::span<const Rational>(kappa), std::span<const Rational>(c), opts);
}

inline StabilityVerdict analyze(const Network& net, const std::vector<Rational>& kappa, const std::vector<Rational>& c) {
  return analyze_full(net, kappa, c).verdict;
}

/// A point where two steady states merge as kappa_ell varies: x1 is a root of
/// phi'(x1) inside I, and kappa_ell = phi(kappa_hat; x1).
struct FoldPoint {
  AlgebraicRoot x1;
  Rational kappa_ell;  // phi at the refined x1
  bool kappa_positive = false;
};

/// Folds of the curve kappa_ell = phi(kappa_hat; x1) over the interval I.
inline std::vector<FoldPoint> fold_points(const ReducedSystem& rs, std::span<const Rational> kappa_full,
                                          const Rational& tol = Rational(1, Integer(1) << 60)) {
  PhiFunction f = phi_function(rs, kappa_full);
  UnivarPoly crit = f.numerator.derivative() * f.denominator - f.numerator * f.denominator.derivative();
  std::vector<FoldPoint> out;
  if (crit.is_zero() || rs.I.empty()) return out;
  for (const RootRecord& rec : isolate_roots(crit, rs.I.lo, rs.I.hi)) {
    AlgebraicRoot root = AlgebraicRoot::of(crit, rec);
    if (root.sign_of(f.denominator) == 0) continue;
    Rational x = root.approx(tol);
    Rational k = f.numerator(x) / f.denominator(x);
    out.push_back({root, k, k.sign() > 0});
  }
  return out;
}

/// Result of nudging kappa_ell around a root of q. `first` uses
/// kappa_ell + split_sign * delta, `second` the opposite sign.
struct PerturbationBranch {
  std::vector<Rational> kappa;
  std::size_t roots_in_window = 0;
  std::size_t above = 0;  // roots greater than the original root
  std::size_t below = 0;
  bool all_simple = true;
};

struct Perturbation {
  unsigned multiplicity = 0;
  Rational delta;
  int split_sign = 0;
  PerturbationBranch first;
  PerturbationBranch second;
  std::size_t predicted_first = 0;
  std::size_t predicted_second = 0;
};

struct PerturbationOptions {
  Rational delta_start = 1;
  Rational delta_min = Rational(1, Integer(1) << 40);
};

namespace detail {

inline AlgebraicRoot shifted(const AlgebraicRoot& r, const Rational& d) {
  // p(t - d) has the root r + d.
  const auto& cs = r.squarefree().coefficients();
  UnivarPoly shifted_poly;
  UnivarPoly base = UnivarPoly::linear(1, -d);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) shifted_poly = shifted_poly * base + UnivarPoly(*it);
  RootRecord rec = r.record();
  rec.lo += d;
  rec.hi += d;
  rec.approx += d;
  return {shifted_poly, rec};
}

inline PerturbationBranch perturbation_branch(const ReducedSystem& rs, std::vector<Rational> kappa,
                                              const AlgebraicRoot& target, const Rational& eps) {
  PerturbationBranch b;
  b.kappa = kappa;
  UnivarPoly q = build_q(rs, kappa).poly;
  if (q.is_zero()) {
    b.all_simple = false;
    return b;
  }
  AlgebraicRoot lo_edge = shifted(target, -eps);
  AlgebraicRoot hi_edge = shifted(target, eps);
  UnivarPoly sq = squarefree_kernel(q);
  for (const RootRecord& rec : isolate_roots(q, target.record().lo - eps, target.record().hi + eps)) {
    AlgebraicRoot y(sq, rec);
    if (y.compare(lo_edge) <= 0 || y.compare(hi_edge) >= 0) continue;
    ++b.roots_in_window;
    if (rec.multiplicity != 1) b.all_simple = false;
    int side = y.compare(target);
    if (side > 0) ++b.above;
    if (side < 0) ++b.below;
  }
  return b;
}

}  // namespace detail

/// Searches delta = delta_start, delta_start/2, ... for a perturbation of
/// kappa_ell that behaves as predicted near a root x* of q:
///   even multiplicity: one direction gives two simple roots (one on each side
///   of x*) within eps, the other gives none;
///   odd multiplicity: each direction gives exactly one simple root within eps,
///   above x* for one direction and below for the other.
/// Every candidate is validated by exact re-isolation at delta and delta/2.
inline Perturbation perturb_degenerate(const ReducedSystem& rs, std::span<const Rational> kappa,
                                       const RootRecord& target, const Rational& eps,
                                       const PerturbationOptions& opts = {}) {
  detail::check_kappa(rs.network, kappa);
  if (eps.sign() <= 0) throw DimensionMismatch("epsilon must be positive");
  UnivarPoly q = build_q(rs, kappa).poly;
  AlgebraicRoot root = AlgebraicRoot::of(q, target);
  if (root.sign_of(P_poly(rs, rs.ell)) == 0) throw NotWellDefined("the target root");

  Perturbation result;
  result.multiplicity = target.multiplicity;
  const bool even = target.multiplicity % 2 == 0;
  result.predicted_first = even ? 2 : 1;
  result.predicted_second = even ? 0 : 1;

  auto nudged = [&](const Rational& delta, int sign) -> std::optional<std::vector<Rational>> {
    std::vector<Rational> k(kappa.begin(), kappa.end());
    k[rs.ell] += delta * sign;
    if (k[rs.ell].sign() <= 0) return std::nullopt;
    return k;
  };
  auto validates = [&](const Rational& delta, int sign, PerturbationBranch& first, PerturbationBranch& second) {
    auto kf = nudged(delta, sign);
    auto ks = nudged(delta, -sign);
    if (!kf || !ks) return false;
    first = detail::perturbation_branch(rs, *kf, root, eps);
    second = detail::perturbation_branch(rs, *ks, root, eps);
    if (!first.all_simple || !second.all_simple) return false;
    if (even) return first.roots_in_window == 2 && first.above == 1 && first.below == 1 && second.roots_in_window == 0;
    return first.roots_in_window == 1 && first.above == 1 && second.roots_in_window == 1 && second.below == 1;
  };

  for (Rational delta = opts.delta_start; delta >= opts.delta_min; delta /= 2) {
    for (int sign : {1, -1}) {
      PerturbationBranch f, s, f_half, s_half;
      if (validates(delta, sign, f, s) && validates(delta / 2, sign, f_half, s_half)) {
        result.delta = delta;
        result.split_sign = sign;
        result.first = std::move(f);
        result.second = std::move(s);
        return result;
      }
    }
  }
  throw SearchFailed(to_string(opts.delta_min));
}

inline Perturbation perturb_degenerate(const ReducedSystem& rs, const std::vector<Rational>& kappa,
                                       const RootRecord& target, const Rational& eps,
                                       const PerturbationOptions& opts = {}) {
  return perturb_degenerate(rs, std::span<const Rational>(kappa), target, eps, opts);
}

}  // namespace crn1d
