#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qinterf/common.hpp"
#include "qinterf/grid.hpp"

namespace qinterf {

/// Nonnegative density values on a grid; normalized so the Riemann sum is 1.
struct DensityField {
  EvaluationGrid grid;
  std::vector<double> values;

  DensityField(EvaluationGrid g, std::vector<double> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.node_count())
      throw ConfigError("DensityField: value count does not match grid");
  }

  double integral() const {
    return pairwise_sum<double>(values.size(),
                                [&](std::size_t i) { return values[i]; }) *
           grid.cell_volume();
  }

  double max_value() const {
    double m = values.empty() ? 0.0 : values.front();
    for (double v : values) m = std::max(m, v);
    return m;
  }

  bool is_normalized(double tol = 1e-9) const {
    return std::abs(integral() - 1.0) <= tol;
  }

  void normalize() {
    const double s = integral();
    if (!(s > 1e-14) || !std::isfinite(s))
      throw DegenerateError("DensityField: vanishing mass, cannot normalize");
    for (double& v : values) v /= s;
  }
};

/// Complex amplitude on a grid; normalized so the Riemann sum of |psi|^2 is 1.
struct AmplitudeField {
  EvaluationGrid grid;
  std::vector<Complex> values;

  AmplitudeField(EvaluationGrid g, std::vector<Complex> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.node_count())
      throw ConfigError("AmplitudeField: value count does not match grid");
  }

  double squared_norm() const {
    return pairwise_sum<double>(values.size(),
                                [&](std::size_t i) { return std::norm(values[i]); }) *
           grid.cell_volume();
  }

  bool is_normalized(double tol = 1e-9) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }

  void normalize() {
    const double s = squared_norm();
    if (!(s > 1e-14) || !std::isfinite(s))
      throw DegenerateError(
          "AmplitudeField: amplitude cancels everywhere, cannot normalize");
    const double r = 1.0 / std::sqrt(s);
    for (Complex& v : values) v *= r;
  }
};

}  // namespace qinterf
