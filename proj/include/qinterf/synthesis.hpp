#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "qinterf/gaussian.hpp"
#include "qinterf/linalg.hpp"
#include "qinterf/rng.hpp"

namespace qinterf {

inline double wrap_2pi(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0) r += two_pi;
  return r;
}

/// One ground-truth cluster: mixture weight, center, covariance and the
/// phase used by the per-cluster phase strategy.
struct ClusterSpec {
  double weight;
  Vector mean;
  Covariance cov;
  double phase = 0.0;

  ClusterSpec(double weight_, Vector mean_, Covariance cov_, double phase_ = 0.0)
      : weight(weight_), mean(std::move(mean_)), cov(std::move(cov_)),
        phase(wrap_2pi(phase_)) {
    if (!(weight > 0.0) || weight > 1.0)
      throw ConfigError("ClusterSpec: weight must be in (0, 1]");
    if (mean.size() != cov.dim())
      throw ConfigError("ClusterSpec: mean/cov dimension mismatch");
    check_finite(mean, "ClusterSpec mean");
  }
};

class MixtureModel {
 public:
  explicit MixtureModel(std::vector<ClusterSpec> clusters)
      : clusters_(std::move(clusters)) {
    if (clusters_.empty()) throw ConfigError("MixtureModel: no clusters");
    double w = 0.0;
    for (const auto& c : clusters_) {
      if (c.mean.size() != clusters_.front().mean.size())
        throw ConfigError("MixtureModel: clusters must share dimension");
      w += c.weight;
    }
    if (std::abs(w - 1.0) > 1e-12)
      throw ConfigError("MixtureModel: weights must sum to 1");
  }

  const std::vector<ClusterSpec>& clusters() const { return clusters_; }
  std::size_t size() const { return clusters_.size(); }
  int dim() const { return static_cast<int>(clusters_.front().mean.size()); }

 private:
  std::vector<ClusterSpec> clusters_;
};

struct Dataset {
  std::vector<Vector> points;
  std::optional<std::vector<int>> labels;
  std::uint64_t seed = 0;
  std::optional<MixtureModel> model;

  std::size_t size() const { return points.size(); }
  int dim() const {
    if (points.empty()) throw ConfigError("Dataset: empty");
    return static_cast<int>(points.front().size());
  }
};

namespace detail {

// Counter layout per point: slot 0 the label uniform, then one Box-Muller
// pair (2 counters) per pair of coordinates. Stratified sampling keeps the
// label slot reserved so a point's coordinates depend only on its index.
inline std::uint64_t counters_per_point(int dim) {
  return 1 + 2 * static_cast<std::uint64_t>((dim + 1) / 2);
}

inline Vector draw_point(const SeedStream& stream, std::uint64_t base,
                         const ClusterSpec& c, const Matrix& chol) {
  const int d = static_cast<int>(c.mean.size());
  Vector z(d);
  for (int j = 0; j < d; j += 2) {
    double z0, z1;
    stream.normal_pair(base + 1 + j, z0, z1);
    z[j] = z0;
    if (j + 1 < d) z[j + 1] = z1;
  }
  return c.mean + chol * z;
}

inline std::vector<Matrix> cholesky_factors(const MixtureModel& model) {
  std::vector<Matrix> out;
  out.reserve(model.size());
  for (const auto& c : model.clusters())
    out.push_back(Eigen::LLT<Matrix>(c.cov.matrix()).matrixL());
  return out;
}

}  // namespace detail

/// i.i.d. label-then-Gaussian sampling; deterministic in (model, n, seed).
inline Dataset sample_mixture(const MixtureModel& model, std::size_t n,
                              std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample_mixture: n must be >= 1");
  const SeedStream stream(seed);
  const auto chol = detail::cholesky_factors(model);
  const std::uint64_t stride = detail::counters_per_point(model.dim());

  Dataset ds;
  ds.seed = seed;
  ds.model = model;
  ds.points.reserve(n);
  std::vector<int> labels;
  labels.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t base = stride * k;
    const double u = stream.uniform(base);
    int label = 0;
    double acc = 0.0;
    for (std::size_t c = 0; c < model.size(); ++c) {
      acc += model.clusters()[c].weight;
      if (u < acc || c + 1 == model.size()) {
        label = static_cast<int>(c);
        break;
      }
    }
    ds.points.push_back(detail::draw_point(stream, base,
                                           model.clusters()[label],
                                           chol[label]));
    labels.push_back(label);
  }
  ds.labels = std::move(labels);
  return ds;
}

/// Exactly per_cluster[i] points from cluster i, in cluster order.
inline Dataset stratified_sample(const MixtureModel& model,
                                 const std::vector<std::size_t>& per_cluster,
                                 std::uint64_t seed) {
  if (per_cluster.size() != model.size())
    throw ConfigError("stratified_sample: per_cluster length mismatch");
  for (std::size_t c : per_cluster)
    if (c == 0)
      throw ConfigError("stratified_sample: zero per-cluster count");
  const SeedStream stream(seed);
  const auto chol = detail::cholesky_factors(model);
  const std::uint64_t stride = detail::counters_per_point(model.dim());

  Dataset ds;
  ds.seed = seed;
  ds.model = model;
  std::vector<int> labels;
  std::uint64_t k = 0;
  for (std::size_t c = 0; c < model.size(); ++c) {
    for (std::size_t i = 0; i < per_cluster[c]; ++i, ++k) {
      ds.points.push_back(detail::draw_point(stream, stride * k,
                                             model.clusters()[c], chol[c]));
      labels.push_back(static_cast<int>(c));
    }
  }
  ds.labels = std::move(labels);
  return ds;
}

/// Unit-less separation |mu_j - mu_i| / (2 sqrt(det Sigma)), defined only for
/// clusters sharing a covariance. Note the d > 1 caveat: det Sigma has units
/// of length^(2d), so for d > 1 this quantity is not scale-free the way the
/// 1D |mu2 - mu1| / (2 sigma) is; it is kept in this exact form regardless.
inline double separation(const MixtureModel& model, std::size_t i,
                         std::size_t j) {
  if (i >= model.size() || j >= model.size())
    throw ConfigError("separation: cluster index out of range");
  const auto& ci = model.clusters()[i];
  const auto& cj = model.clusters()[j];
  const double scale =
      std::max(1.0, ci.cov.matrix().cwiseAbs().maxCoeff());
  if ((ci.cov.matrix() - cj.cov.matrix()).cwiseAbs().maxCoeff() >
      1e-12 * scale)
    throw ConfigError("separation: clusters must share a covariance");
  return (cj.mean - ci.mean).norm() /
         (2.0 * std::sqrt(ci.cov.determinant()));
}

}  // namespace qinterf
