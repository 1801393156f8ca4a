#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qinterf/field.hpp"

namespace qinterf {

struct Peak {
  std::size_t node_index;
  Vector coords;
  double value;
};

struct PeakReport {
  double threshold_fraction = 0.5;
  double absolute_threshold = 0.0;
  std::vector<Peak> peaks;
  int count = 0;
  int plateau_merges = 0;
};

namespace detail {

// axis-adjacent neighbor indices (2 in 1D, 4 in 2D); missing ones skipped
inline void for_each_neighbor(const EvaluationGrid& g, std::size_t idx,
                              auto&& fn) {
  if (g.dim() == 1) {
    if (idx > 0) fn(idx - 1);
    if (idx + 1 < g.node_count()) fn(idx + 1);
  } else {
    const std::size_t n1 = g.nodes_on_axis(1);
    const std::size_t i0 = idx / n1, i1 = idx % n1;
    if (i0 > 0) fn(idx - n1);
    if (i0 + 1 < g.nodes_on_axis(0)) fn(idx + n1);
    if (i1 > 0) fn(idx - 1);
    if (i1 + 1 < n1) fn(idx + 1);
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the lowest index as root
    parent[b] = a;
  }
};

}  // namespace detail

/// Threshold at threshold_fraction * max, then count local maxima among the
/// surviving nodes. A node is a candidate when its value is >= every
/// axis-adjacent neighbor (surviving or not; missing boundary neighbors are
/// ignored). Runs of exactly-equal adjacent candidates merge into one peak
/// reported at the run's lowest-index node.
inline PeakReport count_peaks(const DensityField& field,
                              double threshold_fraction = 0.5) {
  if (!(threshold_fraction > 0.0) || !(threshold_fraction < 1.0))
    throw ConfigError("count_peaks: threshold_fraction must be in (0, 1)");
  if (field.values.empty()) throw ConfigError("count_peaks: empty field");

  const auto& g = field.grid;
  const auto& v = field.values;
  PeakReport report;
  report.threshold_fraction = threshold_fraction;
  report.absolute_threshold = threshold_fraction * field.max_value();

  std::vector<char> candidate(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < report.absolute_threshold) continue;
    bool is_max = true;
    detail::for_each_neighbor(g, i, [&](std::size_t j) {
      if (v[j] > v[i]) is_max = false;
    });
    candidate[i] = is_max;
  }

  detail::UnionFind uf(v.size());
  std::size_t n_candidates = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!candidate[i]) continue;
    ++n_candidates;
    detail::for_each_neighbor(g, i, [&](std::size_t j) {
      if (candidate[j] && v[j] == v[i]) uf.unite(i, j);
    });
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (candidate[i] && uf.find(i) == i)
      report.peaks.push_back(Peak{i, g.node(i), v[i]});
  report.count = static_cast<int>(report.peaks.size());
  report.plateau_merges =
      static_cast<int>(n_candidates - report.peaks.size());
  return report;
}

/// Differential entropy Riemann sum, nats: -sum p ln(p) * cell_volume over
/// nodes with p > 0 (the 0 ln 0 = 0 convention).
inline double field_entropy(const DensityField& field) {
  if (!field.is_normalized(1e-6))
    throw ConfigError("field_entropy: field not normalized");
  const double vol = field.grid.cell_volume();
  const double s =
      pairwise_sum<double>(field.values.size(), [&](std::size_t i) {
        const double p = field.values[i];
        return p > 0.0 ? p * std::log(p) : 0.0;
      });
  return -s * vol;
}

/// Grid integral of sqrt(p); smaller means a more concentrated field.
inline double field_sparsity(const DensityField& field) {
  if (!field.is_normalized(1e-6))
    throw ConfigError("field_sparsity: field not normalized");
  const double s =
      pairwise_sum<double>(field.values.size(), [&](std::size_t i) {
        return std::sqrt(std::max(0.0, field.values[i]));
      });
  return s * field.grid.cell_volume();
}

struct FieldMetrics {
  double entropy;
  double sparsity;
  double max_value;
};

inline FieldMetrics field_metrics(const DensityField& field) {
  return FieldMetrics{field_entropy(field), field_sparsity(field),
                      field.max_value()};
}

}  // namespace qinterf
