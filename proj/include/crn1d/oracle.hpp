#pragma once

// Independent checks through the full s-dimensional system. Nothing here goes
// through q; the mass-action vector field is built from the stoichiometric
// matrix directly.

#include "crn1d/errors.hpp"
#include "crn1d/matrix.hpp"
#include "crn1d/network.hpp"
#include "crn1d/polynomial.hpp"
#include "crn1d/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace crn1d {

/// f = N * (kappa_j x^alpha_j) together with h: h_1 = f_1 and the affine
/// conservation equations h_i = (beta_i1 - alpha_i1) x_1 - (beta_11 - alpha_11) x_i - c_{i-1}.
struct FullSystem {
  Network network;
  std::vector<Rational> kappa;
  std::vector<Rational> c;

  FullSystem(Network net, std::vector<Rational> k, std::vector<Rational> totals)
      : network(std::move(net)), kappa(std::move(k)), c(std::move(totals)) {
    if (kappa.size() != network.m()) throw DimensionMismatch("one rate constant per reaction expected");
    if (c.size() + 1 != network.s()) throw DimensionMismatch("s - 1 total constants expected");
  }
};

namespace detail {

template <typename T>
T ipow(const T& base, int e) {
  T out(1);
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

template <typename T>
T scalar(const Rational& r) {
  if constexpr (std::is_same_v<T, double>)
    return to_double(r);
  else
    return T(r);
}

template <typename T>
T monomial(const Network& net, std::size_t j, std::span<const T> x) {
  T out(1);
  for (std::size_t k = 0; k < net.s(); ++k) out = out * ipow(x[k], net.alpha(k, j));
  return out;
}

/// d/dx_k of prod_l x_l^alpha_lj.
template <typename T>
T monomial_partial(const Network& net, std::size_t j, std::size_t k, std::span<const T> x) {
  int a = net.alpha(k, j);
  if (a == 0) return T(0);
  T out = scalar<T>(Rational(a)) * ipow(x[k], a - 1);
  for (std::size_t l = 0; l < net.s(); ++l)
    if (l != k) out = out * ipow(x[l], net.alpha(l, j));
  return out;
}

}  // namespace detail

template <typename T>
std::vector<T> eval_f(const FullSystem& fs, std::span<const T> x) {
  const Network& net = fs.network;
  std::vector<T> f(net.s(), T(0));
  for (std::size_t j = 0; j < net.m(); ++j) {
    T rate = detail::scalar<T>(fs.kappa[j]) * detail::monomial(net, j, x);
    for (std::size_t i = 0; i < net.s(); ++i)
      if (net.delta(i, j) != 0) f[i] = f[i] + detail::scalar<T>(Rational(net.delta(i, j))) * rate;
  }
  return f;
}

template <typename T>
std::vector<T> eval_h(const FullSystem& fs, std::span<const T> x) {
  const Network& net = fs.network;
  std::vector<T> h{eval_f(fs, x)[0]};
  const T d11 = detail::scalar<T>(Rational(net.delta(0, 0)));
  for (std::size_t i = 1; i < net.s(); ++i)
    h.push_back(detail::scalar<T>(Rational(net.delta(i, 0))) * x[0] - d11 * x[i] - detail::scalar<T>(fs.c[i - 1]));
  return h;
}

inline std::vector<Rational> eval_h(const FullSystem& fs, const std::vector<Rational>& x) {
  return eval_h<Rational>(fs, std::span<const Rational>(x));
}

/// Jacobian of the mass-action vector field f.
template <typename T>
Matrix<T> jacobian_f(const FullSystem& fs, std::span<const T> x) {
  const Network& net = fs.network;
  Matrix<T> J(net.s(), net.s(), T(0));
  for (std::size_t j = 0; j < net.m(); ++j)
    for (std::size_t k = 0; k < net.s(); ++k) {
      T d = detail::monomial_partial(net, j, k, x);
      if (d == T(0)) continue;
      T rate = detail::scalar<T>(fs.kappa[j]) * d;
      for (std::size_t i = 0; i < net.s(); ++i)
        if (net.delta(i, j) != 0) J(i, k) = J(i, k) + detail::scalar<T>(Rational(net.delta(i, j))) * rate;
    }
  return J;
}

template <typename T>
Matrix<T> jacobian_h(const FullSystem& fs, std::span<const T> x) {
  const Network& net = fs.network;
  Matrix<T> Jf = jacobian_f(fs, x);
  Matrix<T> Jh(net.s(), net.s(), T(0));
  for (std::size_t k = 0; k < net.s(); ++k) Jh(0, k) = Jf(0, k);
  for (std::size_t i = 1; i < net.s(); ++i) {
    Jh(i, 0) = detail::scalar<T>(Rational(net.delta(i, 0)));
    Jh(i, i) = Jh(i, i) - detail::scalar<T>(Rational(net.delta(0, 0)));
  }
  return Jh;
}

template <typename T>
T jac_h_det(const FullSystem& fs, std::span<const T> x) {
  return determinant(jacobian_h(fs, x));
}

inline Rational jac_h_det(const FullSystem& fs, const std::vector<Rational>& x) {
  return jac_h_det<Rational>(fs, std::span<const Rational>(x));
}

/// sum_i df_i/dx_i.
template <typename T>
T jacobian_trace(const FullSystem& fs, std::span<const T> x) {
  Matrix<T> J = jacobian_f(fs, x);
  T t(0);
  for (std::size_t i = 0; i < J.rows(); ++i) t = t + J(i, i);
  return t;
}

/// Sign of the trace of Jac_f at x; -1 means stable for a nondegenerate state.
inline int trace_criterion(const FullSystem& fs, const std::vector<Rational>& x) {
  return sign(jacobian_trace<Rational>(fs, std::span<const Rational>(x)));
}

/// The compatibility-class line x(t) with x_1 = t, solved from h_2..h_s.
inline std::vector<UnivarPoly> class_line(const FullSystem& fs) {
  const Network& net = fs.network;
  const Rational d11 = net.delta(0, 0);
  if (d11 == 0) throw DimensionMismatch("species 1 is unchanged by reaction 1");
  std::vector<UnivarPoly> line{UnivarPoly::x()};
  for (std::size_t i = 1; i < net.s(); ++i)
    line.push_back(UnivarPoly::linear(Rational(net.delta(i, 0)) / d11, -fs.c[i - 1] / d11));
  return line;
}

/// Trace of Jac_f along the class line, as a polynomial in x_1.
inline UnivarPoly trace_along_line(const FullSystem& fs) {
  auto line = class_line(fs);
  return jacobian_trace<UnivarPoly>(fs, std::span<const UnivarPoly>(line));
}

/// |Jac_h| along the class line, as a polynomial in x_1.
inline UnivarPoly jac_h_det_along_line(const FullSystem& fs) {
  auto line = class_line(fs);
  return jac_h_det<UnivarPoly>(fs, std::span<const UnivarPoly>(line));
}

/// h_1 along the class line; equals g.
inline UnivarPoly h1_along_line(const FullSystem& fs) {
  auto line = class_line(fs);
  return eval_f<UnivarPoly>(fs, std::span<const UnivarPoly>(line))[0];
}

struct EigenCheck {
  std::vector<std::complex<double>> eigenvalues;
  std::size_t near_zero = 0;
  double nonzero_eigenvalue = 0.0;  // real part of the single eigenvalue off zero
  int sign = 0;
  double threshold = 0.0;
};

/// Floating-point eigenvalues of Jac_f at x. Expects s - 1 eigenvalues below
/// tol * (1 + max|J_ik|) in magnitude and one real eigenvalue clearly off
/// zero; anything else is reported as IllConditioned.
inline EigenCheck eigen_spectrum(const FullSystem& fs, const std::vector<Rational>& x, double tol = 1e-8) {
  Matrix<Rational> J = jacobian_f<Rational>(fs, std::span<const Rational>(x));
  const std::size_t s = J.rows();
  Eigen::MatrixXd M(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
  double maxnorm = 0.0;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      double v = to_double(J(i, k));
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
      maxnorm = std::max(maxnorm, std::abs(v));
    }
  EigenCheck out;
  out.threshold = tol * (1.0 + maxnorm);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
  if (solver.info() != Eigen::Success) throw IllConditioned("eigenvalue iteration did not converge");
  std::size_t off = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    std::complex<double> ev = solver.eigenvalues()(i);
    out.eigenvalues.push_back(ev);
    if (std::abs(ev) < out.threshold) {
      ++out.near_zero;
    } else {
      ++off;
      out.nonzero_eigenvalue = ev.real();
    }
  }
  if (off != 1 || out.near_zero + 1 != s)
    throw IllConditioned(std::to_string(off) + " eigenvalue(s) above threshold " + std::to_string(out.threshold));
  if (std::abs(out.nonzero_eigenvalue) < out.threshold) throw IllConditioned("nonzero eigenvalue is not real");
  out.sign = out.nonzero_eigenvalue < 0 ? -1 : 1;
  return out;
}

/// True when the eigenvalue picture at x agrees with the expected trace sign.
inline bool eig_check(const FullSystem& fs, const std::vector<Rational>& x, double tol, int expected_sign) {
  return eigen_spectrum(fs, x, tol).sign == expected_sign;
}

}  // namespace crn1d
