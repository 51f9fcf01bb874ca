#pragma once

// JSON report types. Rationals travel as "p/q" strings so a report read back
// compares equal to the one written.

#include "crn1d/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nlohmann {

template <>
struct adl_serializer<crn1d::Rational> {
  static void to_json(json& j, const crn1d::Rational& r) { j = crn1d::to_string(r); }
  static void from_json(const json& j, crn1d::Rational& r) {
    if (j.is_string())
      r = crn1d::parse_rational(j.get<std::string>());
    else if (j.is_number_integer())
      r = crn1d::Rational(j.get<long long>());
    else
      throw std::invalid_argument("expected a rational as a string or integer");
  }
};

template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v)
      j = *v;
    else
      j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null())
      v.reset();
    else
      v = j.get<T>();
  }
};

}  // namespace nlohmann

namespace crn1d {

/// A coordinate: exact when known, always with an enclosing interval and a
/// rounded decimal.
struct ValueReport {
  std::optional<Rational> exact;
  Rational lo;
  Rational hi;
  std::string approx;
  friend bool operator==(const ValueReport&, const ValueReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ValueReport, exact, lo, hi, approx)

struct StateReport {
  ValueReport x1;
  std::vector<ValueReport> x;  // original species order
  unsigned multiplicity = 0;
  bool nondegenerate = false;
  std::optional<bool> stable;
  int q_prime_sign = 0;
  std::optional<int> trace_sign;
  std::optional<int> eigen_sign;
  bool eval_h_zero = false;
  friend bool operator==(const StateReport&, const StateReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StateReport, x1, x, multiplicity, nondegenerate, stable, q_prime_sign, trace_sign,
                                   eigen_sign, eval_h_zero)

/// (lo, hi) with hi = null for +infinity.
struct IntervalReport {
  Rational lo;
  std::optional<Rational> hi;
  friend bool operator==(const IntervalReport&, const IntervalReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IntervalReport, lo, hi)

/// Indices are 1-based and refer to the normalized species order.
struct ReducedReport {
  std::vector<Rational> lambda;
  std::vector<Rational> A;
  std::vector<Rational> B;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<int> phi;
  std::vector<std::vector<int>> gamma;
  std::vector<std::size_t> J;
  std::vector<std::size_t> H;
  IntervalReport I;
  IntervalReport admissible;
  std::size_t tau = 0;
  std::size_t ell = 0;
  std::vector<std::size_t> L;
  std::vector<Rational> C;
  friend bool operator==(const ReducedReport&, const ReducedReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReducedReport, lambda, A, B, classes, phi, gamma, J, H, I, admissible, tau, ell, L, C)

struct ChecksReport {
  bool alternating_signs = false;
  bool determinant_identity = false;
  bool factorization = false;
  bool sign_transfer = false;
  bool oracle_agreement = false;
  bool eval_h_zero = false;
  friend bool operator==(const ChecksReport&, const ChecksReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ChecksReport, alternating_signs, determinant_identity, factorization, sign_transfer,
                                   oracle_agreement, eval_h_zero)

struct ErrorReport {
  std::string kind;
  std::string message;
  friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ErrorReport, kind, message)

struct Report {
  int schema_version = 1;
  std::string status = "ok";
  std::optional<ErrorReport> error;
  std::vector<std::string> warnings;

  std::vector<std::string> species;
  std::string network;
  std::vector<Rational> kappa;
  std::vector<Rational> c;

  std::vector<std::size_t> permutation;  // normalized species i is original species permutation[i]
  std::string normalized_network;
  std::vector<Rational> normalized_c;

  std::optional<ReducedReport> reduced;
  std::vector<Rational> q;  // constant term first
  std::string q_text;
  int q_degree = -1;
  int degree_bound = 0;

  std::vector<StateReport> steady_states;
  std::size_t stable_count = 0;
  std::optional<Rational> b_value;
  std::optional<bool> b_positive;
  std::optional<int> two_reaction_sign;
  std::vector<std::size_t> cap_stab_if_maximal;  // [lo, hi]
  std::optional<ChecksReport> checks;

  friend bool operator==(const Report&, const Report&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Report, schema_version, status, error, warnings, species, network, kappa, c,
                                   permutation, normalized_network, normalized_c, reduced, q, q_text, q_degree,
                                   degree_bound, steady_states, stable_count, b_value, b_positive, two_reaction_sign,
                                   cap_stab_if_maximal, checks)

/// Serialized form; keys sorted, two-space indent, trailing newline.
inline std::string dump(const Report& r) { return nlohmann::json(r).dump(2) + "\n"; }

inline Report load_report(const std::string& text) { return nlohmann::json::parse(text).get<Report>(); }

}  // namespace crn1d
