#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "qinterf/field.hpp"
#include "qinterf/gaussian.hpp"
#include "qinterf/grid.hpp"
#include "qinterf/rng.hpp"
#include "qinterf/synthesis.hpp"

namespace qinterf {

// ---------------------------------------------------------------------------
// Phase assignment

struct AllZeroPhases {};
struct PerClusterPhases {
  std::vector<double> phases;  // one per cluster, indexed by label
};
struct RandomUniformPhases {
  std::uint64_t seed = 0;
};
using PhaseStrategy =
    std::variant<AllZeroPhases, PerClusterPhases, RandomUniformPhases>;

struct PhaseAssignment {
  std::vector<double> phases;  // one per data point, in [0, 2*pi)
  std::string strategy_name;
};

inline PhaseAssignment assign_phases(const Dataset& data,
                                     const PhaseStrategy& strategy) {
  PhaseAssignment out;
  out.phases.resize(data.size());
  if (std::holds_alternative<AllZeroPhases>(strategy)) {
    out.strategy_name = "all_zero";
    for (double& p : out.phases) p = 0.0;
  } else if (const auto* pc = std::get_if<PerClusterPhases>(&strategy)) {
    out.strategy_name = "per_cluster";
    if (!data.labels)
      throw ConfigError("assign_phases: per_cluster needs a labeled dataset");
    for (std::size_t i = 0; i < data.size(); ++i) {
      const int lbl = (*data.labels)[i];
      if (lbl < 0 || static_cast<std::size_t>(lbl) >= pc->phases.size())
        throw ConfigError("assign_phases: label without a per-cluster phase");
      out.phases[i] = wrap_2pi(pc->phases[lbl]);
    }
  } else {
    const auto& ru = std::get<RandomUniformPhases>(strategy);
    out.strategy_name = "random_uniform";
    const SeedStream stream(ru.seed);
    for (std::size_t i = 0; i < data.size(); ++i)
      out.phases[i] = 2.0 * std::numbers::pi * stream.uniform(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Empirical estimators

namespace detail {

inline void check_data_grid(const Dataset& data, const EvaluationGrid& grid) {
  if (data.points.empty()) throw ConfigError("estimator: empty dataset");
  if (data.dim() != grid.dim())
    throw ConfigError("estimator: dataset/grid dimension mismatch");
}

}  // namespace detail

/// Kernel density sum of Gaussians of covariance eta / alpha centered at the
/// data points, normalized on the grid. O(N * nodes).
inline DensityField classical_density(const Dataset& data, double alpha,
                                      const Covariance& eta,
                                      const EvaluationGrid& grid) {
  detail::check_data_grid(data, grid);
  if (!(alpha > 0.0)) throw ConfigError("classical_density: alpha must be > 0");
  if (eta.dim() != grid.dim())
    throw ConfigError("classical_density: eta dimension mismatch");
  const Covariance kernel = eta.scaled(1.0 / alpha);
  const Matrix& inv = kernel.inverse();
  const std::size_t nodes = grid.node_count();
  std::vector<double> values(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    const Vector y = grid.node(n);
    values[n] = pairwise_sum<double>(data.size(), [&](std::size_t i) {
      const Vector d = data.points[i] - y;
      return std::exp(-0.5 * d.dot(inv * d));
    });
  }
  DensityField field(grid, std::move(values));
  field.normalize();
  return field;
}

/// Empirical amplitude: sum over points of the uniform-modulus kernel
/// G_{i*hbar*eta}(x_i - y) times e^{i*phi_i}, normalized so the grid Riemann
/// sum of |psi|^2 is 1. O(N * nodes); the per-node point sum uses the fixed
/// pairwise reduction.
inline AmplitudeField quantum_amplitude(const Dataset& data, double hbar,
                                        const Covariance& eta,
                                        const PhaseAssignment& phases,
                                        const EvaluationGrid& grid) {
  detail::check_data_grid(data, grid);
  if (!(hbar > 0.0)) throw ConfigError("quantum_amplitude: hbar must be > 0");
  if (eta.dim() != grid.dim())
    throw ConfigError("quantum_amplitude: eta dimension mismatch");
  if (phases.phases.size() != data.size())
    throw ConfigError("quantum_amplitude: phase count mismatch");

  // (i*hbar*eta)^{-1} = -(i/hbar) eta^{-1}; the quadratic form is a pure phase
  const Matrix scaled_inv = eta.inverse() / hbar;
  const std::size_t nodes = grid.node_count();
  std::vector<Complex> values(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    const Vector y = grid.node(n);
    values[n] = pairwise_sum<Complex>(data.size(), [&](std::size_t i) {
      const Vector d = data.points[i] - y;
      const double theta = 0.5 * d.dot(scaled_inv * d) + phases.phases[i];
      return Complex(std::cos(theta), std::sin(theta));
    });
  }
  AmplitudeField field(grid, std::move(values));
  field.normalize();  // throws DegenerateError if everything cancelled
  return field;
}

/// Pointwise squared modulus; inherits the amplitude's normalization.
inline DensityField quantum_density(const AmplitudeField& amp) {
  if (!amp.is_normalized(1e-6))
    throw ConfigError("quantum_density: amplitude field not normalized");
  std::vector<double> values(amp.values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::norm(amp.values[i]);
  return DensityField(amp.grid, std::move(values));
}

/// O(N^2 * nodes) double cosine sum over point pairs; verification oracle for
/// the linear amplitude route. The pairwise phase
///   phi_ij(y) = -(x_i - x_j)^T (hbar eta)^{-1} y
///               + (x_i^T (hbar eta)^{-1} x_i - x_j^T (hbar eta)^{-1} x_j) / 2
/// is evaluated literally, not through the amplitude.
inline DensityField quantum_density_pairwise(const Dataset& data, double hbar,
                                             const Covariance& eta,
                                             const PhaseAssignment& phases,
                                             const EvaluationGrid& grid,
                                             std::size_t point_cap = 500) {
  detail::check_data_grid(data, grid);
  if (!(hbar > 0.0))
    throw ConfigError("quantum_density_pairwise: hbar must be > 0");
  if (phases.phases.size() != data.size())
    throw ConfigError("quantum_density_pairwise: phase count mismatch");
  const std::size_t n_points = data.size();
  if (n_points > point_cap)
    throw ConfigError("quantum_density_pairwise: N exceeds the O(N^2) cap");

  const Matrix inv = eta.inverse() / hbar;  // (hbar eta)^{-1}
  std::vector<double> quad(n_points);      // x_i^T (hbar eta)^{-1} x_i
  for (std::size_t i = 0; i < n_points; ++i)
    quad[i] = data.points[i].dot(inv * data.points[i]);

  const std::size_t nodes = grid.node_count();
  std::vector<double> values(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    const Vector y = grid.node(n);
    const double v = pairwise_sum<double>(n_points, [&](std::size_t i) {
      double row = 1.0;
      for (std::size_t j = i + 1; j < n_points; ++j) {
        const Vector dij = data.points[i] - data.points[j];
        const double phi_ij = -dij.dot(inv * y) + 0.5 * (quad[i] - quad[j]);
        row += 2.0 * std::cos(phi_ij + phases.phases[i] - phases.phases[j]);
      }
      return row;
    });
    values[n] = std::max(0.0, v);  // |.|^2 identity; clip roundoff only
  }
  DensityField field(grid, std::move(values));
  field.normalize();
  return field;
}

}  // namespace qinterf
