#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qinterf/analytic.hpp"
#include "qinterf/detection.hpp"
#include "qinterf/estimators.hpp"
#include "qinterf/io.hpp"
#include "qinterf/synthesis.hpp"

namespace qinterf {

// ---------------------------------------------------------------------------
// Configuration

enum class EstimatorKind { classical, quantum, both };

struct GridSpec {
  bool automatic = true;
  std::vector<GridAxis> axes;  // used when !automatic
  int intervals = 100;         // used when automatic
};

struct ExperimentConfig {
  explicit ExperimentConfig(MixtureModel m) : model(std::move(m)) {}

  MixtureModel model;
  std::vector<std::size_t> counts;  // stratified per-cluster counts; if empty,
  std::size_t total_n = 0;          // sample total_n from the mixture instead
  std::uint64_t seed = 0;
  int n_seeds = 1;
  EstimatorKind estimator = EstimatorKind::both;
  double alpha = 10.0;
  double hbar = 0.4;
  double lambda = 4.0;  // kernel scale; eta = lambda^2 * identity
  double threshold = 0.5;
  PhaseStrategy phases = PerClusterPhases{};
  GridSpec grid;
  // sweep axes over scalar fields, applied in the fixed order
  // alpha, hbar, lambda, mu2 (mu2 moves the second cluster's first coordinate)
  std::map<std::string, std::vector<double>> sweeps;
  std::string output_prefix;
  bool emit_fields = false;
  bool timings = false;  // off by default so CSV output is byte-reproducible
};

using ConfigMap = std::map<std::string, std::string>;

/// Flat `key = value` format, '#' comments, dotted keys for nesting.
inline ConfigMap parse_config_map(std::istream& is) {
  ConfigMap out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) +
                                       ": empty key");
    out[key] = val;
  }
  return out;
}

namespace detail {

inline std::vector<double> parse_double_list(const std::string& s,
                                             const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': bad number '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
  const auto v = parse_double_list(s, key);
  if (v.size() != 1) throw ConfigError("config key '" + key + "': expected one number");
  return v[0];
}

inline PhaseStrategy parse_phase_strategy(const std::string& s) {
  if (s == "all_zero") return AllZeroPhases{};
  if (s.rfind("per_cluster:", 0) == 0)
    return PerClusterPhases{parse_double_list(s.substr(12), "phases")};
  if (s == "per_cluster") return PerClusterPhases{};  // phases from the model
  if (s.rfind("random_uniform:", 0) == 0)
    return RandomUniformPhases{
        static_cast<std::uint64_t>(std::stoull(s.substr(15)))};
  throw ConfigError(
      "config key 'phases': expected all_zero, per_cluster[:p0,p1,...] or "
      "random_uniform:<seed>, got '" + s + "'");
}

inline GridSpec parse_grid_spec(const std::string& s) {
  GridSpec g;
  if (s == "auto") return g;
  if (s.rfind("auto:", 0) == 0) {
    g.intervals = std::stoi(s.substr(5));
    return g;
  }
  g.automatic = false;
  std::stringstream ss(s);
  std::string axis;
  while (std::getline(ss, axis, ';')) {
    double lo, hi;
    int iv;
    if (std::sscanf(axis.c_str(), "%lf:%lf:%d", &lo, &hi, &iv) != 3)
      throw ConfigError("config key 'grid': expected lo:hi:intervals, got '" +
                        axis + "'");
    g.axes.push_back(GridAxis{lo, hi, iv});
  }
  if (g.axes.empty() || g.axes.size() > 2)
    throw ConfigError("config key 'grid': need 1 or 2 axes");
  return g;
}

inline MixtureModel build_model(const ConfigMap& m) {
  std::vector<ClusterSpec> clusters;
  for (int i = 0;; ++i) {
    const std::string prefix = "model.cluster." + std::to_string(i) + ".";
    const auto mean_it = m.find(prefix + "mean");
    if (mean_it == m.end()) break;
    const auto mean_list = parse_double_list(mean_it->second, prefix + "mean");
    Vector mean(static_cast<int>(mean_list.size()));
    for (std::size_t a = 0; a < mean_list.size(); ++a) mean[a] = mean_list[a];
    const int d = static_cast<int>(mean.size());

    double weight = 0.0;
    if (auto it = m.find(prefix + "weight"); it != m.end())
      weight = parse_double(it->second, prefix + "weight");
    else
      throw ConfigError("config: missing " + prefix + "weight");

    std::optional<Covariance> cov;
    if (auto it = m.find(prefix + "sigma"); it != m.end()) {
      const double s = parse_double(it->second, prefix + "sigma");
      cov = Covariance::isotropic(d, s * s);
    }
    if (auto it = m.find(prefix + "cov"); it != m.end()) {
      const auto entries = parse_double_list(it->second, prefix + "cov");
      if (entries.size() != static_cast<std::size_t>(d) * d)
        throw ConfigError("config: " + prefix + "cov needs d*d entries");
      Matrix c(d, d);
      for (int r = 0; r < d; ++r)
        for (int q = 0; q < d; ++q) c(r, q) = entries[r * d + q];
      cov = Covariance(c);
    }
    if (!cov)
      throw ConfigError("config: missing " + prefix + "sigma or " + prefix +
                        "cov");
    double phase = 0.0;
    if (auto it = m.find(prefix + "phase"); it != m.end())
      phase = parse_double(it->second, prefix + "phase");
    clusters.emplace_back(weight, std::move(mean), std::move(*cov), phase);
  }
  if (clusters.empty())
    throw ConfigError("config: no model.cluster.<i>.mean entries");
  return MixtureModel(std::move(clusters));
}

}  // namespace detail

inline ExperimentConfig build_config(const ConfigMap& m) {
  static const std::vector<std::string> sweepable = {"alpha", "hbar", "lambda",
                                                     "mu2"};
  ExperimentConfig cfg{detail::build_model(m)};
  for (const auto& [key, val] : m) {
    if (key.rfind("model.cluster.", 0) == 0) continue;
    if (key == "counts") {
      for (double c : detail::parse_double_list(val, key)) {
        if (c < 1 || c != std::floor(c))
          throw ConfigError("config key 'counts': need positive integers");
        cfg.counts.push_back(static_cast<std::size_t>(c));
      }
    } else if (key == "n") {
      cfg.total_n = static_cast<std::size_t>(
          detail::parse_double(val, key));
    } else if (key == "seed") {
      cfg.seed = std::stoull(val);
    } else if (key == "seeds") {
      cfg.n_seeds = std::stoi(val);
      if (cfg.n_seeds < 1) throw ConfigError("config key 'seeds': need >= 1");
    } else if (key == "estimator") {
      if (val == "classical") cfg.estimator = EstimatorKind::classical;
      else if (val == "quantum") cfg.estimator = EstimatorKind::quantum;
      else if (val == "both") cfg.estimator = EstimatorKind::both;
      else throw ConfigError("config key 'estimator': classical|quantum|both");
    } else if (key == "alpha") {
      cfg.alpha = detail::parse_double(val, key);
    } else if (key == "hbar") {
      cfg.hbar = detail::parse_double(val, key);
    } else if (key == "lambda") {
      cfg.lambda = detail::parse_double(val, key);
    } else if (key == "threshold") {
      cfg.threshold = detail::parse_double(val, key);
    } else if (key == "phases") {
      cfg.phases = detail::parse_phase_strategy(val);
    } else if (key == "grid") {
      cfg.grid = detail::parse_grid_spec(val);
    } else if (key.rfind("sweep.", 0) == 0) {
      const std::string field = key.substr(6);
      bool known = false;
      for (const auto& s : sweepable) known |= (s == field);
      if (!known)
        throw ConfigError("config key '" + key + "': unknown sweep axis");
      cfg.sweeps[field] = detail::parse_double_list(val, key);
    } else if (key == "output") {
      cfg.output_prefix = val;
    } else if (key == "emit_fields") {
      cfg.emit_fields = (val == "true" || val == "1");
    } else if (key == "timings") {
      cfg.timings = (val == "true" || val == "1");
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (cfg.counts.empty() && cfg.total_n == 0)
    throw ConfigError("config: need 'counts' or 'n'");
  if (!cfg.counts.empty() && cfg.counts.size() != cfg.model.size())
    throw ConfigError("config: counts length must match the cluster count");
  if (cfg.sweeps.count("mu2") && cfg.model.size() < 2)
    throw ConfigError("config: sweep.mu2 needs at least two clusters");
  if (!(cfg.threshold > 0.0) || !(cfg.threshold < 1.0))
    throw ConfigError("config key 'threshold': must be in (0, 1)");
  return cfg;
}

inline ExperimentConfig load_config(
    std::istream& is, const std::vector<std::string>& overrides = {}) {
  ConfigMap m = parse_config_map(is);
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + ov + "': expected key=value");
    m[ov.substr(0, eq)] = ov.substr(eq + 1);
  }
  return build_config(m);
}

// ---------------------------------------------------------------------------
// Trials

struct TrialResult {
  int run_id = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  double mu2 = 0.0;       // second cluster's first coordinate (nan if K == 1)
  double delta_mu = 0.0;  // separation(0, 1), nan if undefined
  double alpha = 0.0;
  double hbar = 0.0;
  double lambda = 0.0;
  std::string phase_strategy;
  double threshold = 0.5;
  int peak_count = 0;
  std::vector<Vector> peak_locations;
  double entropy = 0.0;
  double sparsity = 0.0;
  long wall_ms = 0;
  int true_k = 0;  // not a CSV column; used by sweep_report
};

inline std::string csv_header() {
  return "run_id,seed,estimator,mu2,delta_mu,alpha,hbar,lambda,"
         "phase_strategy,threshold,peak_count,peak_locations,entropy,"
         "sparsity,wall_ms";
}

inline std::string to_csv_row(const TrialResult& t) {
  std::ostringstream os;
  os << t.run_id << ',' << t.seed << ',' << t.estimator << ','
     << fmt_double(t.mu2) << ',' << fmt_double(t.delta_mu) << ','
     << fmt_double(t.alpha) << ',' << fmt_double(t.hbar) << ','
     << fmt_double(t.lambda) << ',' << t.phase_strategy << ','
     << fmt_double(t.threshold) << ',' << t.peak_count << ',';
  for (std::size_t i = 0; i < t.peak_locations.size(); ++i) {
    if (i) os << ';';
    const Vector& p = t.peak_locations[i];
    for (int a = 0; a < p.size(); ++a) {
      if (a) os << '|';
      os << fmt_double(p[a]);
    }
  }
  os << ',' << fmt_double(t.entropy) << ',' << fmt_double(t.sparsity) << ','
     << t.wall_ms;
  return os.str();
}

namespace detail {

struct ResolvedPoint {
  double alpha, hbar, lambda;
  std::optional<double> mu2;
};

// cross-product of the sweep axes in the fixed alpha, hbar, lambda, mu2 order
inline std::vector<ResolvedPoint> sweep_points(const ExperimentConfig& cfg) {
  auto axis = [&](const char* name, double base) {
    auto it = cfg.sweeps.find(name);
    return it != cfg.sweeps.end() ? it->second : std::vector<double>{base};
  };
  const auto alphas = axis("alpha", cfg.alpha);
  const auto hbars = axis("hbar", cfg.hbar);
  const auto lambdas = axis("lambda", cfg.lambda);
  std::vector<std::optional<double>> mu2s;
  if (auto it = cfg.sweeps.find("mu2"); it != cfg.sweeps.end())
    for (double v : it->second) mu2s.emplace_back(v);
  else
    mu2s.emplace_back(std::nullopt);

  std::vector<ResolvedPoint> out;
  for (double a : alphas)
    for (double h : hbars)
      for (double l : lambdas)
        for (const auto& m : mu2s) out.push_back(ResolvedPoint{a, h, l, m});
  return out;
}

inline MixtureModel with_mu2(const MixtureModel& model, double mu2) {
  std::vector<ClusterSpec> clusters = model.clusters();
  Vector mean = clusters[1].mean;
  mean[0] = mu2;
  clusters[1] = ClusterSpec(clusters[1].weight, std::move(mean),
                            clusters[1].cov, clusters[1].phase);
  return MixtureModel(std::move(clusters));
}

inline PhaseStrategy resolved_phases(const ExperimentConfig& cfg,
                                     const MixtureModel& model) {
  if (const auto* pc = std::get_if<PerClusterPhases>(&cfg.phases)) {
    if (pc->phases.empty()) {
      PerClusterPhases from_model;
      for (const auto& c : model.clusters())
        from_model.phases.push_back(c.phase);
      return from_model;
    }
  }
  return cfg.phases;
}

}  // namespace detail

/// Runs the full sweep cross-product over every seed: sample, estimate,
/// detect, measure. Classical and quantum trials at the same sweep point and
/// seed share the identical dataset, so their comparison is paired. Seeds
/// derive from the base seed as counter_hash(seed, seed_index).
inline std::vector<TrialResult> run_experiment(const ExperimentConfig& cfg) {
  const auto points = detail::sweep_points(cfg);
  std::vector<TrialResult> results;
  int run_id = 0;
  for (const auto& pt : points) {
    const MixtureModel model =
        pt.mu2 ? detail::with_mu2(cfg.model, *pt.mu2) : cfg.model;
    const Covariance eta =
        Covariance::isotropic(model.dim(), pt.lambda * pt.lambda);
    const PhaseStrategy phase_strategy = detail::resolved_phases(cfg, model);

    double mu2_echo = std::numeric_limits<double>::quiet_NaN();
    double dmu_echo = std::numeric_limits<double>::quiet_NaN();
    if (model.size() >= 2) {
      mu2_echo = model.clusters()[1].mean[0];
      try {
        dmu_echo = separation(model, 0, 1);
      } catch (const ConfigError&) {
        // unequal covariances: delta_mu undefined, leave nan
      }
    }

    for (int s = 0; s < cfg.n_seeds; ++s) {
      const std::uint64_t trial_seed = counter_hash(cfg.seed, s);
      const Dataset data =
          cfg.counts.empty()
              ? sample_mixture(model, cfg.total_n, trial_seed)
              : stratified_sample(model, cfg.counts, trial_seed);
      const EvaluationGrid grid =
          cfg.grid.automatic
              ? default_grid(data.points, eta, cfg.grid.intervals)
              : EvaluationGrid(cfg.grid.axes);

      auto run_one = [&](const std::string& kind) {
        const auto t0 = std::chrono::steady_clock::now();
        DensityField field = [&] {
          if (kind == "classical")
            return classical_density(data, pt.alpha, eta, grid);
          const auto phases = assign_phases(data, phase_strategy);
          return quantum_density(
              quantum_amplitude(data, pt.hbar, eta, phases, grid));
        }();
        const PeakReport report = count_peaks(field, cfg.threshold);
        const FieldMetrics metrics = field_metrics(field);

        TrialResult r;
        r.run_id = run_id++;
        r.seed = trial_seed;
        r.estimator = kind;
        r.mu2 = mu2_echo;
        r.delta_mu = dmu_echo;
        r.alpha = pt.alpha;
        r.hbar = pt.hbar;
        r.lambda = pt.lambda;
        r.phase_strategy =
            kind == "classical" ? "-" : assign_phases(data, phase_strategy).strategy_name;
        r.threshold = cfg.threshold;
        r.peak_count = report.count;
        for (const auto& p : report.peaks) r.peak_locations.push_back(p.coords);
        r.entropy = metrics.entropy;
        r.sparsity = metrics.sparsity;
        r.true_k = static_cast<int>(model.size());
        if (cfg.timings)
          r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (cfg.emit_fields && !cfg.output_prefix.empty()) {
          std::ofstream ofs(cfg.output_prefix + "_run" +
                            std::to_string(r.run_id) + ".field");
          write_field(ofs, field, kind);
        }
        results.push_back(std::move(r));
      };

      if (cfg.estimator != EstimatorKind::quantum) run_one("classical");
      if (cfg.estimator != EstimatorKind::classical) run_one("quantum");
    }
  }
  return results;
}

inline void write_csv(std::ostream& os, const std::vector<TrialResult>& rows) {
  os << csv_header() << "\n";
  for (const auto& r : rows) os << to_csv_row(r) << "\n";
}

/// Groups trials by (estimator, alpha, hbar, lambda, mu2) and reports the
/// success fraction (peak count equals the true cluster count) plus mean
/// entropy and sparsity per group. Grouping is order-independent.
inline std::string sweep_report(const std::vector<TrialResult>& results) {
  if (results.empty()) throw ConfigError("sweep_report: empty input");
  struct Agg {
    int trials = 0, successes = 0;
    double entropy = 0.0, sparsity = 0.0;
  };
  // aggregate in run_id order so the report is identical for any row order
  std::vector<const TrialResult*> ordered;
  ordered.reserve(results.size());
  for (const auto& r : results) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const TrialResult* a, const TrialResult* b) {
              return a->run_id < b->run_id;
            });
  std::map<std::tuple<std::string, double, double, double, double>, Agg> groups;
  for (const auto* rp : ordered) {
    const TrialResult& r = *rp;
    auto& g = groups[{r.estimator, r.alpha, r.hbar, r.lambda, r.mu2}];
    ++g.trials;
    if (r.peak_count == r.true_k) ++g.successes;
    g.entropy += r.entropy;
    g.sparsity += r.sparsity;
  }
  std::ostringstream os;
  os << "estimator\talpha\thbar\tlambda\tmu2\ttrials\tsuccesses\t"
        "success_fraction\tmean_entropy\tmean_sparsity\n";
  for (const auto& [key, g] : groups) {
    os << std::get<0>(key) << '\t' << fmt_double(std::get<1>(key)) << '\t'
       << fmt_double(std::get<2>(key)) << '\t' << fmt_double(std::get<3>(key))
       << '\t' << fmt_double(std::get<4>(key)) << '\t' << g.trials << '\t'
       << g.successes << '\t'
       << fmt_double(static_cast<double>(g.successes) / g.trials) << '\t'
       << fmt_double(g.entropy / g.trials) << '\t'
       << fmt_double(g.sparsity / g.trials) << "\n";
  }
  return os.str();
}

}  // namespace qinterf
