#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qinterf/linalg.hpp"

namespace qinterf {

struct GridAxis {
  double low = 0.0;
  double high = 1.0;
  int intervals = 100;
};

/// Rectangular evaluation grid, d in {1, 2}. Nodes are the interval
/// endpoints (intervals + 1 per axis), stored row-major with the last axis
/// varying fastest.
class EvaluationGrid {
 public:
  explicit EvaluationGrid(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty() || axes_.size() > 2)
      throw ConfigError("EvaluationGrid: dim must be 1 or 2");
    for (const auto& a : axes_) {
      if (!(a.low < a.high) || !std::isfinite(a.low) || !std::isfinite(a.high))
        throw ConfigError("EvaluationGrid: need low < high, finite");
      if (a.intervals < 2)
        throw ConfigError("EvaluationGrid: need intervals >= 2");
    }
  }

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<GridAxis>& axes() const { return axes_; }

  std::size_t nodes_on_axis(int a) const {
    return static_cast<std::size_t>(axes_[a].intervals) + 1;
  }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (int a = 0; a < dim(); ++a) n *= nodes_on_axis(a);
    return n;
  }

  double spacing(int a) const {
    return (axes_[a].high - axes_[a].low) / axes_[a].intervals;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= spacing(a);
    return v;
  }

  double coordinate(int a, std::size_t i) const {
    return axes_[a].low + spacing(a) * static_cast<double>(i);
  }

  Vector node(std::size_t idx) const {
    Vector v(dim());
    for (int a = dim() - 1; a >= 0; --a) {
      const std::size_t n = nodes_on_axis(a);
      v[a] = coordinate(a, idx % n);
      idx /= n;
    }
    return v;
  }

  std::size_t index(std::size_t i0, std::size_t i1 = 0) const {
    return dim() == 1 ? i0 : i0 * nodes_on_axis(1) + i1;
  }

  bool operator==(const EvaluationGrid& o) const {
    if (dim() != o.dim()) return false;
    for (int a = 0; a < dim(); ++a)
      if (axes_[a].low != o.axes_[a].low || axes_[a].high != o.axes_[a].high ||
          axes_[a].intervals != o.axes_[a].intervals)
        return false;
    return true;
  }

 private:
  std::vector<GridAxis> axes_;
};

/// Default extent: data bounding box padded by 3 * sqrt(largest eigenvalue
/// of eta) per axis, 100 intervals.
inline EvaluationGrid default_grid(const std::vector<Vector>& points,
                                   const Covariance& eta, int intervals = 100) {
  if (points.empty()) throw ConfigError("default_grid: empty point set");
  const int d = static_cast<int>(points.front().size());
  if (d != eta.dim()) throw ConfigError("default_grid: dimension mismatch");
  const double pad = 3.0 * std::sqrt(eta.max_eigenvalue());
  std::vector<GridAxis> axes(d);
  for (int a = 0; a < d; ++a) {
    double lo = points.front()[a], hi = points.front()[a];
    for (const auto& p : points) {
      lo = std::min(lo, p[a]);
      hi = std::max(hi, p[a]);
    }
    axes[a] = GridAxis{lo - pad, hi + pad, intervals};
  }
  return EvaluationGrid(std::move(axes));
}

}  // namespace qinterf
