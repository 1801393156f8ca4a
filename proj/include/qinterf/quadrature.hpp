#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qinterf/common.hpp"

namespace qinterf {
namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial roots.
struct GaussRule {
  std::vector<double> x, w;

  explicit GaussRule(int n) : x(n), w(n) {
    const double eps = 1e-15;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p1 / pp;
        if (std::abs(z - z1) <= eps) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      w[n - 1 - i] = w[i];
    }
  }
};

inline const GaussRule& gauss12() {
  static const GaussRule rule(12);
  return rule;
}

template <typename T, typename F>
T gauss_panel(F&& f, double a, double b) {
  const auto& r = gauss12();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T acc{};
  for (std::size_t i = 0; i < r.x.size(); ++i)
    acc += T(r.w[i] * f(mid + half * r.x[i]));
  return T(half) * acc;
}

inline double err_norm(double v) { return std::abs(v); }
inline double err_norm(const std::complex<double>& v) {
  return std::max(std::abs(v.real()), std::abs(v.imag()));
}

template <typename T, typename F>
T integrate_rec(F&& f, double a, double b, double tol, int depth) {
  const T whole = gauss_panel<T>(f, a, b);
  const double mid = 0.5 * (a + b);
  const T left = gauss_panel<T>(f, a, mid);
  const T right = gauss_panel<T>(f, mid, b);
  const T refined = left + right;
  if (err_norm(refined - whole) <= tol) return refined;
  if (depth <= 0)
    throw QuadratureError("integrate_adaptive: did not converge");
  return integrate_rec<T>(f, a, mid, 0.5 * tol, depth - 1) +
         integrate_rec<T>(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration of f over [a, b] to the given
/// absolute tolerance. T is double or std::complex<double>. Throws
/// QuadratureError on non-convergence; never truncates silently.
template <typename T, typename F>
T integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                     int max_depth = 40, int initial_panels = 16) {
  if (!(b > a)) throw ConfigError("integrate_adaptive: need a < b");
  T acc{};
  const double h = (b - a) / initial_panels;
  for (int p = 0; p < initial_panels; ++p)
    acc += detail::integrate_rec<T>(f, a + p * h, a + (p + 1) * h,
                                    abs_tol / initial_panels, max_depth);
  return acc;
}

}  // namespace qinterf
