#pragma once

// The pieces behind the command-line tool: parameter files, the analyze
// pipeline, fold-curve samples and the parameter sweep.

#include "crn1d/analysis.hpp"
#include "crn1d/errors.hpp"
#include "crn1d/network.hpp"
#include "crn1d/oracle.hpp"
#include "crn1d/rational.hpp"
#include "crn1d/reduction.hpp"
#include "crn1d/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace crn1d {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

/// A JSON scalar as an exact rational. Floats go through their shortest
/// round-trip text, so 0.1 becomes 1/10.
inline Rational json_rational(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned() || j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a number or a rational string");
}

inline std::vector<Rational> json_rationals(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("parameter file: ") + e.what());
  }
}

}  // namespace detail

/// Rate constants plus either total constants c (in the conservation form of
/// the normalized network) or a positive point x0 fixing the class.
struct Params {
  std::vector<Rational> kappa;
  std::optional<std::vector<Rational>> c;
  std::optional<std::vector<Rational>> x0;
};

inline Params parse_params(const std::string& text) {
  nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw InputError("parameter file: expected a JSON object");
  Params p;
  if (!j.contains("kappa")) throw InputError("parameter file: missing \"kappa\"");
  p.kappa = detail::json_rationals(j["kappa"], "kappa");
  if (j.contains("c")) p.c = detail::json_rationals(j["c"], "c");
  if (j.contains("x0")) p.x0 = detail::json_rationals(j["x0"], "x0");
  if (p.c.has_value() == p.x0.has_value()) throw InputError("parameter file: give exactly one of \"c\" and \"x0\"");
  return p;
}

/// The network after both relabellings, with c expressed for it.
struct Prepared {
  Network original;
  Network network;
  Permutation permutation;  // network species i is original species permutation[i]
  std::vector<Rational> c_given;
  std::vector<Rational> c;
};

inline Prepared prepare(const Network& net, const Params& p) {
  Prepared out{net, {}, {}, {}, {}};
  NormalizedNetwork nn = normalize_first_species(net);
  if (p.kappa.size() != net.m())
    throw DimensionMismatch("expected " + std::to_string(net.m()) + " rate constants, got " +
                            std::to_string(p.kappa.size()));
  if (p.x0) {
    if (p.x0->size() != net.s()) throw DimensionMismatch("x0 needs " + std::to_string(net.s()) + " entries");
    for (const auto& v : *p.x0)
      if (v.sign() <= 0) throw DimensionMismatch("x0 must be positive");
    std::vector<Rational> xn = permute_vector<Rational>(*p.x0, nn.permutation);
    out.c_given = conservation_constants<Rational>(nn.network, xn);
  } else {
    out.c_given = *p.c;
  }
  if (out.c_given.size() + 1 != net.s())
    throw DimensionMismatch("expected " + std::to_string(net.s() - 1) + " total constants, got " +
                            std::to_string(out.c_given.size()));
  assert_one_dimensional(stoich_data(nn.network));
  Assumption2Result a2 = enforce_assumption2(nn.network, out.c_given);
  out.network = std::move(a2.network);
  out.c = std::move(a2.c);
  out.permutation = compose(nn.permutation, a2.permutation);
  return out;
}

namespace detail {

inline ValueReport value_report(const Rational& a, const Rational& b, const RootRecord& rec, unsigned digits) {
  ValueReport v;
  Rational lo = a * rec.lo + b, hi = a * rec.hi + b;
  if (hi < lo) std::swap(lo, hi);
  v.lo = lo;
  v.hi = hi;
  if (rec.exact()) v.exact = lo;
  v.approx = to_decimal(a * rec.approx + b, digits);
  return v;
}

inline std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto i : v) out.push_back(i + 1);
  return out;
}

inline IntervalReport interval_report(const OpenInterval& I) {
  return {I.lo, I.hi.infinite ? std::optional<Rational>() : std::optional<Rational>(I.hi.value)};
}

inline ReducedReport reduced_report(const ReducedSystem& rs) {
  ReducedReport r;
  r.lambda = rs.lambda;
  r.A = rs.A;
  r.B = rs.B;
  for (std::size_t k : rs.representatives) r.classes.push_back(one_based(rs.class_members(k)));
  r.phi = rs.phi;
  r.gamma = rs.gamma;
  r.J = one_based(rs.J);
  r.H = one_based(rs.H);
  r.I = interval_report(rs.I);
  r.admissible = interval_report(rs.admissible);
  r.tau = rs.tau + 1;
  r.ell = rs.ell + 1;
  r.L = one_based(rs.L);
  r.C = rs.C;
  return r;
}

}  // namespace detail

struct AnalyzeOptions {
  unsigned digits = 12;
  double eigen_tol = 1e-8;
};

struct AnalyzeOutcome {
  Report report;
  int exit_code = 0;
};

/// Full pipeline on a parsed network. Library errors become an error report
/// with exit code 2 (model) or 1 (input).
inline AnalyzeOutcome run_analyze(const Network& net, const Params& params, const AnalyzeOptions& opts = {}) {
  Report rep;
  rep.species = net.species();
  rep.network = unparse(net);
  rep.kappa = params.kappa;
  try {
    Prepared pr = prepare(net, params);
    rep.c = pr.c_given;
    rep.permutation = detail::one_based(pr.permutation);
    rep.normalized_network = unparse(pr.network);
    rep.normalized_c = pr.c;

    // Reduce separately first so the summary survives a later model error.
    ReducedSystem rs = reduce(pr.network, pr.c);
    rep.reduced = detail::reduced_report(rs);

    Analysis an = analyze_full(pr.network, params.kappa, pr.c);
    const SteadyStateSet& set = an.set;
    const StabilityVerdict& v = an.verdict;
    rep.q = set.q.poly.coefficients();
    rep.q_text = set.q.poly.to_string("x1");
    rep.q_degree = v.q_degree;
    rep.degree_bound = v.degree_bound;
    rep.stable_count = v.stable_count;
    rep.b_value = v.b_value;
    rep.b_positive = v.b_positive;
    rep.two_reaction_sign = v.two_reaction_sign;
    rep.cap_stab_if_maximal = {v.cap_stab_if_maximal.lo, v.cap_stab_if_maximal.hi};
    if (rs.admissible.empty()) rep.warnings.push_back("admissible interval is empty");

    FullSystem fs(pr.network, params.kappa, pr.c);
    const std::size_t s = pr.network.s();
    const int d11 = pr.network.delta(0, 0);
    ChecksReport checks;
    checks.alternating_signs = v.alternating_signs;
    UnivarPoly trace = trace_along_line(fs);
    checks.determinant_identity = jac_h_det_along_line(fs) == UnivarPoly(pow(Rational(-d11), unsigned(s - 1))) * trace;
    UnivarPoly g = build_g(pr.network, params.kappa, pr.c);
    checks.factorization = g == set.q.poly * forced_factor(set.rs);
    checks.sign_transfer = checks.oracle_agreement = checks.eval_h_zero = true;

    auto line = class_line(fs);
    std::vector<UnivarPoly> h_line = eval_h<UnivarPoly>(fs, std::span<const UnivarPoly>(line));
    bool line_on_class = std::all_of(h_line.begin() + 1, h_line.end(), [](const UnivarPoly& p) { return p.is_zero(); });
    const UnivarPoly dg = g.derivative();

    for (std::size_t i = 0; i < set.states.size(); ++i) {
      const SteadyState& st = set.states[i];
      AlgebraicRoot root = set.root(i);
      StateReport sr;
      sr.x1 = detail::value_report(1, 0, st.x1, opts.digits);
      std::vector<ValueReport> xs;
      for (std::size_t k = 0; k < s; ++k) xs.push_back(detail::value_report(rs.A[k], rs.B[k], st.x1, opts.digits));
      sr.x = unpermute_vector<ValueReport>(xs, pr.permutation);
      sr.multiplicity = st.multiplicity;
      sr.nondegenerate = st.nondegenerate;
      sr.stable = st.stable;
      sr.q_prime_sign = st.q_prime_sign;

      if (st.exact()) {
        auto h = eval_h(fs, st.x);
        sr.eval_h_zero = std::all_of(h.begin(), h.end(), [](const Rational& r) { return r.sign() == 0; });
      } else {
        sr.eval_h_zero = line_on_class && root.sign_of(h_line[0]) == 0;
      }
      checks.eval_h_zero = checks.eval_h_zero && sr.eval_h_zero;

      if (st.nondegenerate) {
        if (root.sign_of(dg) != st.q_prime_sign) checks.sign_transfer = false;
        sr.trace_sign = root.sign_of(trace);
        try {
          sr.eigen_sign = eigen_spectrum(fs, st.x, opts.eigen_tol).sign;
        } catch (const IllConditioned& e) {
          rep.warnings.push_back("steady state " + std::to_string(i + 1) + ": " + e.what());
        }
        bool stable = *st.stable;
        bool agree = sr.trace_sign == (stable ? -1 : 1) && sr.eigen_sign == sr.trace_sign;
        if (!agree) checks.oracle_agreement = false;
      } else {
        rep.warnings.push_back("steady state " + std::to_string(i + 1) + " is degenerate (multiplicity " +
                               std::to_string(st.multiplicity) + ")");
      }
      rep.steady_states.push_back(std::move(sr));
    }
    rep.checks = checks;
    return {std::move(rep), 0};
  } catch (const Error& e) {
    rep.status = "error";
    rep.error = ErrorReport{e.kind(), e.what()};
    if (e.kind() == "HEmpty" || e.kind() == "InfinitelyMany") rep.warnings.push_back(e.kind());
    return {std::move(rep), e.is_model_error() ? 2 : 1};
  }
}

/// Same, starting from file contents; parse failures give exit code 1.
inline AnalyzeOutcome run_analyze_text(const std::string& network_text, const std::string& params_text,
                                       const AnalyzeOptions& opts = {}) {
  try {
    Network net = parse_network(network_text);
    Params p = parse_params(params_text);
    return run_analyze(net, p, opts);
  } catch (const Error& e) {
    Report rep;
    rep.status = "error";
    rep.error = ErrorReport{e.kind(), e.what()};
    return {std::move(rep), e.is_model_error() ? 2 : 1};
  }
}

struct FoldCurve {
  std::size_t ell = 0;  // 0-based, normalized order
  std::vector<std::pair<Rational, Rational>> rows;
  std::vector<Rational> skipped;
};

/// kappa_ell = phi(kappa_hat; x1) at `samples` evenly spaced x1 in [from, to].
/// The entry of `params.kappa` at ell is ignored.
inline FoldCurve emit_fold_curve(const Network& net, const Params& params, const Rational& from, const Rational& to,
                                 std::size_t samples) {
  if (samples == 0) throw InputError("at least one sample is required");
  if (to < from) throw InputError("empty x1 range");
  Prepared pr = prepare(net, params);
  ReducedSystem rs = reduce(pr.network, pr.c);
  PhiFunction phi = phi_function(rs, params.kappa);
  FoldCurve out;
  out.ell = rs.ell;
  for (std::size_t i = 0; i < samples; ++i) {
    Rational x = samples == 1 ? from : from + (to - from) * Rational(i) / Rational(samples - 1);
    Rational den = phi.denominator(x);
    if (den.sign() == 0)
      out.skipped.push_back(x);
    else
      out.rows.emplace_back(x, phi.numerator(x) / den);
  }
  return out;
}

inline std::string fold_curve_csv(const FoldCurve& fc, unsigned digits) {
  std::string out = "x1,kappa_ell\n";
  for (const auto& [x, k] : fc.rows) out += to_decimal(x, digits) + "," + to_decimal(k, digits) + "\n";
  return out;
}

struct SweepSpec {
  std::vector<std::pair<Rational, Rational>> kappa_box;
  std::vector<std::pair<Rational, Rational>> c_box;
  std::string mode = "random";  // or "grid"
  std::size_t samples = 100;     // random mode
  std::size_t grid_points = 3;   // per axis, grid mode
  std::uint64_t seed = 1;
  std::size_t target = 3;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepHit {
  std::size_t index = 0;
  std::vector<Rational> kappa;
  std::vector<Rational> c;
  std::size_t roots = 0;
  std::size_t stable = 0;
  Rational b_value;
  bool b_positive = false;
  std::optional<int> two_reaction_sign;
  friend bool operator==(const SweepHit&, const SweepHit&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SweepHit, index, kappa, c, roots, stable, b_value, b_positive, two_reaction_sign)

struct SweepResult {
  int schema_version = 1;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t target = 0;
  std::size_t failed = 0;  // samples raising a model error
  std::vector<SweepHit> hits;
  bool shortcut_consistent = true;  // b > 0 hits only with shortcut sign +1
  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SweepResult, schema_version, mode, seed, samples, target, failed, hits,
                                   shortcut_consistent)

inline SweepSpec parse_sweep_spec(const nlohmann::json& j) {
  SweepSpec spec;
  auto box = [&](const char* key) {
    std::vector<std::pair<Rational, Rational>> out;
    if (!j.contains(key)) throw InputError(std::string("sweep: missing \"") + key + "\"");
    const auto& arr = j[key];
    if (!arr.is_array()) throw InputError(std::string("sweep: \"") + key + "\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = std::string(key) + "[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 2) throw InputError(where + ": expected [lo, hi]");
      out.emplace_back(detail::json_rational(arr[i][0], where), detail::json_rational(arr[i][1], where));
    }
    return out;
  };
  spec.kappa_box = box("kappa_box");
  spec.c_box = box("c_box");
  if (j.contains("mode")) spec.mode = j["mode"].get<std::string>();
  if (spec.mode != "random" && spec.mode != "grid") throw InputError("sweep: mode must be \"random\" or \"grid\"");
  if (j.contains("samples")) spec.samples = j["samples"].get<std::size_t>();
  if (j.contains("grid_points")) spec.grid_points = j["grid_points"].get<std::size_t>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("target")) spec.target = j["target"].get<std::size_t>();
  return spec;
}

namespace detail {

inline std::vector<Rational> sample_point(const SweepSpec& spec, std::size_t index) {
  const std::size_t dims = spec.kappa_box.size() + spec.c_box.size();
  auto axis = [&](std::size_t d) -> const std::pair<Rational, Rational>& {
    return d < spec.kappa_box.size() ? spec.kappa_box[d] : spec.c_box[d - spec.kappa_box.size()];
  };
  std::vector<Rational> out;
  if (spec.mode == "grid") {
    std::size_t rest = index;
    for (std::size_t d = 0; d < dims; ++d) {
      std::size_t k = rest % spec.grid_points;
      rest /= spec.grid_points;
      const auto& [lo, hi] = axis(d);
      out.push_back(spec.grid_points == 1 ? lo : lo + (hi - lo) * Rational(k) / Rational(spec.grid_points - 1));
    }
    return out;
  }
  // One generator per sample so the draw does not depend on scheduling.
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t(index) >> 32)};
  std::mt19937_64 rng(seq);
  for (std::size_t d = 0; d < dims; ++d) {
    const auto& [lo, hi] = axis(d);
    Rational u(Integer(rng() >> 44), Integer(1) << 20);
    out.push_back(lo + (hi - lo) * u);
  }
  return out;
}

}  // namespace detail

inline SweepResult run_sweep(const Network& net, const SweepSpec& spec) {
  if (spec.mode != "random" && spec.mode != "grid") throw InputError("sweep: mode must be \"random\" or \"grid\"");
  if (spec.kappa_box.size() != net.m()) throw DimensionMismatch("sweep: kappa_box needs one range per reaction");
  if (spec.c_box.size() + 1 != net.s()) throw DimensionMismatch("sweep: c_box needs s - 1 ranges");
  SweepResult res;
  res.mode = spec.mode;
  res.seed = spec.seed;
  res.target = spec.target;

  bool empty = false;
  for (const auto& [lo, hi] : spec.kappa_box) empty = empty || hi < lo;
  for (const auto& [lo, hi] : spec.c_box) empty = empty || hi < lo;
  std::size_t total = 0;
  if (!empty) {
    if (spec.mode == "grid") {
      total = spec.grid_points == 0 ? 0 : 1;
      for (std::size_t d = 0; d < net.m() + net.s() - 1; ++d) total *= spec.grid_points;
    } else {
      total = spec.samples;
    }
  }
  res.samples = total;

  std::vector<std::optional<SweepHit>> slots(total);
  std::vector<char> failed(total, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      std::vector<Rational> point = detail::sample_point(spec, i);
      Params p;
      p.kappa.assign(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(net.m()));
      p.c = std::vector<Rational>(point.begin() + static_cast<std::ptrdiff_t>(net.m()), point.end());
      try {
        Prepared pr = prepare(net, p);
        Analysis an = analyze_full(pr.network, p.kappa, pr.c);
        if (an.verdict.cap_pos_witnessed < spec.target) continue;
        slots[i] = SweepHit{i, p.kappa, *p.c, an.verdict.cap_pos_witnessed, an.verdict.stable_count,
                            an.verdict.b_value, an.verdict.b_positive, an.verdict.two_reaction_sign};
      } catch (const Error&) {
        failed[i] = 1;
      }
    }
  };
  unsigned n = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < total; ++i) {
    res.failed += failed[i];
    if (!slots[i]) continue;
    const SweepHit& h = *slots[i];
    if (h.b_positive && h.two_reaction_sign && *h.two_reaction_sign != 1) res.shortcut_consistent = false;
    res.hits.push_back(h);
  }
  return res;
}

/// Parse and rank information for `check`.
inline nlohmann::json check_network(const Network& net) {
  StoichData sd = stoich_data(net);
  nlohmann::json j;
  j["schema_version"] = 1;
  j["species"] = net.species();
  j["reactions"] = net.m();
  j["rank"] = sd.rank;
  j["one_dimensional"] = sd.rank == 1;
  j["network"] = unparse(net);
  return j;
}

}  // namespace crn1d
