// qinterf command line tool.
//
// Subcommands:
//   synth     sample a dataset from a configured mixture model
//   estimate  evaluate a density field from a dataset file
//   count     read a field file and report its peaks
//   run       run a full (possibly swept, multi-seed) experiment to CSV
//   oracle    emit analytic or quadrature reference fields
//
// Exit codes: 0 success, 1 configuration error, 2 numerical degeneracy.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qinterf/qinterf.hpp"

namespace {

using namespace qinterf;

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  return load_config(is, overrides);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw ConfigError("cannot open output file: " + path);
  return file;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open input file: " + path);
  return is;
}

int cmd_synth(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::string& out_path) {
  const ExperimentConfig cfg = load_config_file(config_path, overrides);
  const Dataset data = cfg.counts.empty()
                           ? sample_mixture(cfg.model, cfg.total_n, cfg.seed)
                           : stratified_sample(cfg.model, cfg.counts, cfg.seed);
  std::ofstream file;
  write_dataset(open_output(out_path, file), data);
  return 0;
}

int cmd_estimate(const std::string& config_path,
                 const std::vector<std::string>& overrides,
                 const std::string& in_path, const std::string& out_path) {
  const ExperimentConfig cfg = load_config_file(config_path, overrides);
  auto is = open_input(in_path);
  const Dataset data = read_dataset(is);
  const Covariance eta =
      Covariance::isotropic(data.dim(), cfg.lambda * cfg.lambda);
  const EvaluationGrid grid =
      cfg.grid.automatic ? default_grid(data.points, eta, cfg.grid.intervals)
                         : EvaluationGrid(cfg.grid.axes);
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  if (cfg.estimator == EstimatorKind::classical) {
    write_field(os, classical_density(data, cfg.alpha, eta, grid), "classical");
  } else if (cfg.estimator == EstimatorKind::quantum) {
    const auto phases =
        assign_phases(data, detail::resolved_phases(cfg, cfg.model));
    write_field(os,
                quantum_density(
                    quantum_amplitude(data, cfg.hbar, eta, phases, grid)),
                "quantum");
  } else {
    throw ConfigError("estimate: pick estimator = classical or quantum");
  }
  return 0;
}

int cmd_count(const std::string& in_path, double threshold,
              const std::string& out_path) {
  auto is = open_input(in_path);
  const FieldFile file = read_field(is);
  const PeakReport report = count_peaks(file.as_density(), threshold);
  std::ofstream ofs;
  write_peak_report(open_output(out_path, ofs), report);
  return 0;
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& overrides,
            const std::string& out_path, bool report) {
  const ExperimentConfig cfg = load_config_file(config_path, overrides);
  const auto results = run_experiment(cfg);
  std::ofstream file;
  std::string path = out_path;
  if (path.empty() && !cfg.output_prefix.empty())
    path = cfg.output_prefix + ".csv";
  write_csv(open_output(path, file), results);
  if (report) std::cerr << sweep_report(results);
  return 0;
}

int cmd_oracle(const std::string& form, const Lemma1Params& params,
               const std::string& grid_spec, const std::string& out_path) {
  params.validate();
  GridSpec gs = detail::parse_grid_spec(grid_spec);
  EvaluationGrid grid = [&] {
    if (!gs.automatic) return EvaluationGrid(gs.axes);
    const double pad = 3.0 * std::sqrt(
        std::max(params.sigma * params.sigma,
                 params.lambda * params.lambda));
    const double lo = std::min(params.mu1, params.mu2()) - pad;
    const double hi = std::max(params.mu1, params.mu2()) + pad;
    return EvaluationGrid({GridAxis{lo, hi, gs.intervals}});
  }();
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  if (form == "classical") {
    write_field(os, lemma1_classical(params, grid), "classical");
  } else if (form == "quantum") {
    write_field(os, lemma1_quantum(params, grid), "quantum");
  } else if (form == "three_term") {
    const auto r = lemma1_quantum_three_term(params, grid);
    os << "# clamp_mass=" << fmt_double(r.clamp_mass) << "\n";
    write_field(os, r.field, "quantum");
  } else if (form == "oracle_classical") {
    write_field(os, quadrature_oracle(OracleKind::classical, params, grid),
                "classical");
  } else if (form == "oracle_quantum") {
    write_field(os, quadrature_oracle(OracleKind::quantum, params, grid),
                "quantum");
  } else {
    throw ConfigError(
        "oracle: form must be classical, quantum, three_term, "
        "oracle_classical or oracle_quantum");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-interference cluster counting"};
  app.require_subcommand(1);

  std::string config_path, in_path, out_path, form = "quantum";
  std::string grid_spec = "auto";
  std::vector<std::string> overrides;
  double threshold = 0.5;
  bool report = false;
  qinterf::Lemma1Params params;
  params.n1 = 0.5;
  params.sigma = 2.0;
  params.lambda = 4.0;
  params.alpha = 10.0;
  params.hbar = 0.4;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (key = value)")
        ->required();
    sub->add_option("--set", overrides,
                    "override a config key, key=value (repeatable)");
  };

  auto* synth = app.add_subcommand("synth", "sample a dataset");
  add_config(synth);
  synth->add_option("--out", out_path, "output path (default stdout)");

  auto* estimate = app.add_subcommand("estimate", "dataset to density field");
  add_config(estimate);
  estimate->add_option("--input", in_path, "dataset file")->required();
  estimate->add_option("--out", out_path, "output path (default stdout)");

  auto* count = app.add_subcommand("count", "field file to peak report");
  count->add_option("--input", in_path, "field file")->required();
  count->add_option("--threshold", threshold, "threshold fraction, in (0, 1)");
  count->add_option("--out", out_path, "output path (default stdout)");

  auto* run = app.add_subcommand("run", "experiment config to CSV");
  add_config(run);
  run->add_option("--out", out_path, "CSV path (default: config output key)");
  run->add_flag("--report", report, "print the sweep summary to stderr");

  auto* oracle = app.add_subcommand("oracle", "reference field emission");
  oracle->add_option("--form", form,
                     "classical | quantum | three_term | oracle_classical | "
                     "oracle_quantum");
  oracle->add_option("--n1", params.n1, "first cluster weight");
  oracle->add_option("--mu1", params.mu1, "first center");
  oracle->add_option("--delta-mu", params.delta_mu, "center separation");
  oracle->add_option("--sigma", params.sigma, "cluster standard deviation");
  oracle->add_option("--lambda", params.lambda, "kernel scale");
  oracle->add_option("--alpha", params.alpha, "classical smoothing");
  oracle->add_option("--hbar", params.hbar, "quantum scale");
  oracle->add_option("--phi1", params.phi1, "first phase");
  oracle->add_option("--phi2", params.phi2, "second phase");
  oracle->add_option("--grid", grid_spec, "auto | auto:<n> | lo:hi:n");
  oracle->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(config_path, overrides, out_path);
    if (estimate->parsed())
      return cmd_estimate(config_path, overrides, in_path, out_path);
    if (count->parsed()) return cmd_count(in_path, threshold, out_path);
    if (run->parsed()) return cmd_run(config_path, overrides, out_path, report);
    if (oracle->parsed())
      return cmd_oracle(form, params, grid_spec, out_path);
  } catch (const qinterf::DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return 2;
  } catch (const qinterf::ConfigError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
