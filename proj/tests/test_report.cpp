#include "crn1d/cli.hpp"

#include <gtest/gtest.h>

using namespace crn1d;

namespace {

const std::string kData = std::string(CRN1D_SOURCE_DIR) + "/data/";

AnalyzeOutcome analyze_files(const std::string& net, const std::string& params) {
  return run_analyze_text(read_file(kData + net), read_file(kData + params));
}

}  // namespace

TEST(Params, ParsesStringsAndNumbersExactly) {
  Params p = parse_params(R"({"kappa": ["1/2", 16, 0.1, "2.5e-1"], "c": [-9]})");
  EXPECT_EQ(p.kappa, (std::vector<Rational>{Rational(1, 2), 16, Rational(1, 10), Rational(1, 4)}));
  EXPECT_EQ(*p.c, (std::vector<Rational>{-9}));
  EXPECT_FALSE(p.x0.has_value());
}

TEST(Params, Errors) {
  EXPECT_THROW(parse_params("{"), InputError);
  EXPECT_THROW(parse_params("[]"), InputError);
  EXPECT_THROW(parse_params(R"({"c": [1]})"), InputError);
  EXPECT_THROW(parse_params(R"({"kappa": [1]})"), InputError);
  EXPECT_THROW(parse_params(R"({"kappa": [1], "c": [1], "x0": [1, 2]})"), InputError);
  EXPECT_THROW(parse_params(R"({"kappa": ["1/0"], "c": []})"), InputError);
  EXPECT_THROW(parse_params(R"({"kappa": [true], "c": []})"), InputError);
}

TEST(RunAnalyze, Example36) {
  auto out = analyze_files("ex36.net", "ex36.json");
  ASSERT_EQ(out.exit_code, 0) << dump(out.report);
  const Report& r = out.report;
  EXPECT_EQ(r.status, "ok");
  EXPECT_EQ(r.schema_version, 1);
  EXPECT_EQ(r.steady_states.size(), 3u);
  EXPECT_EQ(r.stable_count, 2u);
  EXPECT_EQ(r.b_value, Rational(9, 2));
  EXPECT_EQ(r.cap_stab_if_maximal, (std::vector<std::size_t>{2, 2}));
  ASSERT_TRUE(r.reduced.has_value());
  EXPECT_EQ(r.reduced->H, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(r.reduced->tau, 1u);
  EXPECT_EQ(r.reduced->L, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r.reduced->I.hi, Rational(9));
  ASSERT_TRUE(r.checks.has_value());
  EXPECT_EQ(*r.checks, (ChecksReport{true, true, true, true, true, true}));
  EXPECT_EQ(r.steady_states[1].x1.exact, Rational(1));
  EXPECT_EQ(r.steady_states[0].x1.approx, "0.394448724536");
  nlohmann::json j = r;
  EXPECT_EQ(j["b_value"], "9/2");
}

TEST(RunAnalyze, Example51) {
  auto out = analyze_files("ex37.net", "ex51.json");
  ASSERT_EQ(out.exit_code, 0);
  const Report& r = out.report;
  ASSERT_EQ(r.steady_states.size(), 3u);
  const StateReport& mid = r.steady_states[1];
  ASSERT_EQ(mid.x.size(), 3u);
  EXPECT_EQ(mid.x[0].exact, Rational(2));
  EXPECT_EQ(mid.x[1].exact, Rational(1));
  EXPECT_EQ(mid.x[2].exact, Rational(3, 4));
  EXPECT_EQ(mid.stable, true);
  EXPECT_EQ(r.stable_count, 1u);
  EXPECT_EQ(r.b_value, Rational(-22, 3));
  EXPECT_EQ(r.two_reaction_sign, -1);
  EXPECT_TRUE(r.checks->oracle_agreement);
  EXPECT_TRUE(r.checks->eval_h_zero);
  for (const auto& st : r.steady_states) {
    EXPECT_EQ(st.trace_sign, st.stable.value() ? -1 : 1);
    EXPECT_EQ(st.eigen_sign, st.trace_sign);
  }

  // The same class given by a point.
  auto by_point = analyze_files("ex37.net", "ex51_x0.json");
  ASSERT_EQ(by_point.exit_code, 0);
  EXPECT_EQ(by_point.report.c, r.c);
  EXPECT_EQ(by_point.report.steady_states, r.steady_states);
}

TEST(RunAnalyze, Example52Relabels) {
  auto out = analyze_files("ex52.net", "ex52.json");
  ASSERT_EQ(out.exit_code, 0) << dump(out.report);
  EXPECT_EQ(out.report.permutation, (std::vector<std::size_t>{2, 1, 3, 4}));
  EXPECT_EQ(out.report.normalized_c, (std::vector<Rational>{3, -4, 1}));
  // This class has no positive points.
  EXPECT_TRUE(out.report.steady_states.empty());
}

TEST(RunAnalyze, ModelAndInputErrors) {
  auto rank2 = analyze_files("rank2.net", "rank2.json");
  EXPECT_EQ(rank2.exit_code, 2);
  EXPECT_EQ(rank2.report.status, "error");
  EXPECT_EQ(rank2.report.error->kind, "NotOneDimensional");

  auto h_empty = run_analyze_text("X1 -> 2 X1", R"({"kappa": [1], "c": []})");
  EXPECT_EQ(h_empty.exit_code, 2);
  EXPECT_EQ(h_empty.report.error->kind, "HEmpty");
  EXPECT_EQ(h_empty.report.warnings, (std::vector<std::string>{"HEmpty"}));

  auto bad_net = run_analyze_text("X1 -> X1", R"({"kappa": [1], "c": []})");
  EXPECT_EQ(bad_net.exit_code, 1);
  EXPECT_EQ(bad_net.report.error->kind, "ParseError");

  auto bad_dims = analyze_files("ex36.net", "ex51.json");
  EXPECT_EQ(bad_dims.exit_code, 1);
  EXPECT_EQ(bad_dims.report.error->kind, "DimensionMismatch");

  auto nonpositive = run_analyze_text("X1 -> 2 X1 ; 2 X1 -> X1", R"({"kappa": [0, 1], "c": []})");
  EXPECT_EQ(nonpositive.exit_code, 1);
}

TEST(Report, RoundTripsLosslessly) {
  for (auto [net, params] : {std::pair{"ex36.net", "ex36.json"}, std::pair{"ex37.net", "ex51.json"},
                             std::pair{"rank2.net", "rank2.json"}, std::pair{"one_species.net", "one_species.json"}}) {
    Report r = analyze_files(net, params).report;
    std::string text = dump(r);
    Report back = load_report(text);
    EXPECT_EQ(back, r) << net;
    EXPECT_EQ(dump(back), text) << net;
  }
}

TEST(Report, Deterministic) {
  EXPECT_EQ(dump(analyze_files("ex36.net", "ex36.json").report), dump(analyze_files("ex36.net", "ex36.json").report));
}

TEST(FoldCurve, Example64) {
  Network net = parse_network(read_file(kData + "ex36.net"));
  Params p = parse_params(read_file(kData + "ex64_fold.json"));
  FoldCurve fc = emit_fold_curve(net, p, 0, 9, 100);
  EXPECT_EQ(fc.ell, 0u);
  EXPECT_EQ(fc.rows.size(), 99u);
  EXPECT_EQ(fc.skipped, (std::vector<Rational>{9}));
  // The curve peaks at the fold.
  FoldCurve near = emit_fold_curve(net, p, Rational(0), Rational(3, 2), 100);
  Rational best = near.rows.front().second;
  Rational best_x = near.rows.front().first;
  for (const auto& [x, k] : near.rows)
    if (k > best) best = k, best_x = x;
  EXPECT_NEAR(to_double(best), 0.614416477635, 1e-4);
  EXPECT_NEAR(to_double(best_x), 0.696110365184, 2e-2);

  FoldCurve one = emit_fold_curve(net, p, parse_rational("1.201246094"), parse_rational("1.201246094"), 1);
  ASSERT_EQ(one.rows.size(), 1u);
  EXPECT_NEAR(to_double(one.rows[0].second), 0.3, 1e-9);
  std::string csv = fold_curve_csv(one, 6);
  EXPECT_EQ(csv, "x1,kappa_ell\n1.201246,0.300000\n");
  EXPECT_THROW(emit_fold_curve(net, p, 1, 0, 3), InputError);
}

TEST(Sweep, Example36FindsPositiveB) {
  Network net = parse_network(read_file(kData + "ex36.net"));
  SweepSpec spec = parse_sweep_spec(nlohmann::json::parse(read_file(kData + "ex36_sweep.json")));
  SweepResult r = run_sweep(net, spec);
  EXPECT_EQ(r.samples, 64u);
  ASSERT_FALSE(r.hits.empty());
  for (const auto& h : r.hits) {
    EXPECT_GE(h.roots, 3u);
    EXPECT_TRUE(h.b_positive);
  }
  spec.threads = 1;
  EXPECT_EQ(run_sweep(net, spec), r);
  spec.threads = 5;
  EXPECT_EQ(run_sweep(net, spec), r);
}

TEST(Sweep, Example37NeverPositive) {
  Network net = parse_network(read_file(kData + "ex37.net"));
  SweepSpec spec = parse_sweep_spec(nlohmann::json::parse(read_file(kData + "ex37_sweep.json")));
  SweepResult r = run_sweep(net, spec);
  EXPECT_EQ(r.samples, 81u);
  ASSERT_FALSE(r.hits.empty());
  for (const auto& h : r.hits) {
    EXPECT_EQ(h.roots, 3u);
    EXPECT_FALSE(h.b_positive);
    EXPECT_EQ(h.two_reaction_sign, -1);
  }
  EXPECT_TRUE(r.shortcut_consistent);
}

TEST(Sweep, EmptyBoxAndBadSpecs) {
  Network net = parse_network(read_file(kData + "ex36.net"));
  SweepSpec spec;
  spec.kappa_box = {{1, 2}, {2, 1}, {1, 2}};
  spec.c_box = {{-9, -9}};
  SweepResult r = run_sweep(net, spec);
  EXPECT_EQ(r.samples, 0u);
  EXPECT_TRUE(r.hits.empty());
  spec.c_box = {};
  EXPECT_THROW(run_sweep(net, spec), DimensionMismatch);
  EXPECT_THROW(parse_sweep_spec(nlohmann::json::parse(R"({"kappa_box": [[1]], "c_box": []})")), InputError);
  EXPECT_THROW(parse_sweep_spec(nlohmann::json::parse(R"({"kappa_box": [], "c_box": [], "mode": "x"})")), InputError);
}
