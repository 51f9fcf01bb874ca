#include "crn1d/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "crn1d: cannot write '" << path << "'\n";
    return 1;
  }
  out << text;
  return 0;
}

int fail(const crn1d::Error& e) {
  nlohmann::json j{{"schema_version", 1}, {"status", "error"}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
  std::cout << j.dump(2) << "\n";
  return e.is_model_error() ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states and stability of mass-action networks with a one-dimensional stoichiometric subspace"};
  app.set_config("--config", "", "TOML/INI file with default option values; command-line flags take precedence");
  app.require_subcommand(1);

  std::string network_path, params_path, output;
  unsigned digits = 12;
  double eigen_tol = 1e-8;

  auto* analyze = app.add_subcommand("analyze", "Enumerate positive steady states and write a JSON report");
  analyze->add_option("network", network_path, "Network file")->required();
  analyze->add_option("params", params_path, "Parameter file: {\"kappa\": [...], \"c\": [...]} or \"x0\"")->required();
  analyze->add_option("-o,--output", output, "Report destination (default stdout)");
  analyze->add_option("--digits", digits, "Decimal digits for approximate values")->capture_default_str();
  analyze->add_option("--eigen-tol", eigen_tol, "Relative threshold for near-zero eigenvalues")->capture_default_str();

  std::string from = "0", to = "1";
  std::size_t samples = 100;
  auto* fold = app.add_subcommand("fold-curve", "Sample kappa_ell = phi(kappa_hat; x1) as CSV");
  fold->add_option("network", network_path, "Network file")->required();
  fold->add_option("params", params_path, "Parameter file; the rate constant at ell is ignored")->required();
  fold->add_option("--from", from, "Left end of the x1 range")->capture_default_str();
  fold->add_option("--to", to, "Right end of the x1 range")->capture_default_str();
  fold->add_option("--samples", samples, "Number of evenly spaced samples, endpoints included")->capture_default_str();
  fold->add_option("--digits", digits, "Decimal digits in the CSV")->capture_default_str();
  fold->add_option("-o,--output", output, "CSV destination (default stdout)");

  std::string sweep_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sweep_samples, target, grid_points;
  std::optional<std::string> mode;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Sample boxes of (kappa, c) and list those with many steady states");
  sweep->add_option("network", network_path, "Network file")->required();
  sweep->add_option("spec", sweep_path,
                    "Sweep file: {\"kappa_box\": [[lo,hi],...], \"c_box\": [...], \"mode\", \"samples\", "
                    "\"grid_points\", \"seed\", \"target\"}")
      ->required();
  sweep->add_option("--seed", seed, "64-bit generator seed (overrides the file)");
  sweep->add_option("--samples", sweep_samples, "Random samples (overrides the file)");
  sweep->add_option("--grid-points", grid_points, "Grid points per axis (overrides the file)");
  sweep->add_option("--mode", mode, "random or grid (overrides the file)");
  sweep->add_option("--target", target, "Minimum number of positive steady states for a hit");
  sweep->add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();
  sweep->add_option("-o,--output", output, "Result destination (default stdout)");

  auto* check = app.add_subcommand("check", "Parse a network and report its stoichiometric rank");
  check->add_option("network", network_path, "Network file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      auto outcome = crn1d::run_analyze_text(crn1d::read_file(network_path), crn1d::read_file(params_path),
                                             {digits, eigen_tol});
      int rc = write_output(crn1d::dump(outcome.report), output);
      return rc ? rc : outcome.exit_code;
    }
    crn1d::Network net = crn1d::parse_network(crn1d::read_file(network_path));
    if (*fold) {
      crn1d::Params p = crn1d::parse_params(crn1d::read_file(params_path));
      crn1d::Rational a, b;
      try {
        a = crn1d::parse_rational(from);
        b = crn1d::parse_rational(to);
      } catch (const std::invalid_argument& e) {
        throw crn1d::InputError(e.what());
      }
      crn1d::FoldCurve fc = crn1d::emit_fold_curve(net, p, a, b, samples);
      for (const auto& x : fc.skipped)
        std::cerr << "skipped x1=" << crn1d::to_string(x) << ": P_ell vanishes\n";
      return write_output(crn1d::fold_curve_csv(fc, digits), output);
    }
    if (*sweep) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(crn1d::read_file(sweep_path));
      } catch (const nlohmann::json::exception& e) {
        throw crn1d::InputError(std::string("sweep file: ") + e.what());
      }
      crn1d::SweepSpec spec;
      try {
        spec = crn1d::parse_sweep_spec(j);
      } catch (const nlohmann::json::exception& e) {
        throw crn1d::InputError(std::string("sweep file: ") + e.what());
      }
      if (seed) spec.seed = *seed;
      if (sweep_samples) spec.samples = *sweep_samples;
      if (grid_points) spec.grid_points = *grid_points;
      if (mode) spec.mode = *mode;
      if (target) spec.target = *target;
      spec.threads = threads;
      return write_output(nlohmann::json(crn1d::run_sweep(net, spec)).dump(2) + "\n", output);
    }
    if (*check) {
      nlohmann::json j = crn1d::check_network(net);
      std::cout << j.dump(2) << "\n";
      return j["one_dimensional"].get<bool>() ? 0 : 2;
    }
  } catch (const crn1d::Error& e) {
    return fail(e);
  }
  return 0;
}
