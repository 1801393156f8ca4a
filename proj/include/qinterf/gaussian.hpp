#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "qinterf/linalg.hpp"

namespace qinterf {

/// Half squared Mahalanobis distance between x and y under eta.
inline double action(const Vector& x, const Vector& y, const Covariance& eta) {
  if (x.size() != y.size() || x.size() != eta.dim())
    throw ConfigError("action: dimension mismatch");
  check_finite(x, "action x");
  check_finite(y, "action y");
  const Vector d = x - y;
  return 0.5 * d.dot(eta.inverse() * d);
}

/// Normalized Gaussian density det(2*pi*cov)^(-1/2) * exp(-action).
inline double gaussian_pdf(const Vector& x, const Vector& mean,
                           const Covariance& cov) {
  const double a = action(x, mean, cov);
  const double log_norm =
      -0.5 * (cov.dim() * std::log(2.0 * std::numbers::pi) +
              std::log(cov.determinant()));
  return std::exp(log_norm - a);
}

/// 1D convenience: normalized Gaussian of the given variance evaluated at z.
inline double gauss1d(double variance, double z) {
  return std::exp(-z * z / (2.0 * variance)) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

/// Gaussian with complex covariance, complex prefactor and (possibly complex)
/// mean. Means become complex under products of complex Gaussians, so the
/// closure of the product identity requires storing them that way; all
/// construction entry points take real means.
struct ComplexGaussian {
  CVector mean;
  ComplexCovariance cov;
  Complex scale{1.0, 0.0};

  ComplexGaussian(const Vector& mean_, ComplexCovariance cov_,
                  Complex scale_ = Complex(1, 0))
      : mean(mean_.cast<Complex>()), cov(std::move(cov_)), scale(scale_) {
    if (mean.size() != cov.dim())
      throw ConfigError("ComplexGaussian: mean/cov dimension mismatch");
  }

  ComplexGaussian(CVector mean_, ComplexCovariance cov_, Complex scale_)
      : mean(std::move(mean_)), cov(std::move(cov_)), scale(scale_) {
    if (mean.size() != cov.dim())
      throw ConfigError("ComplexGaussian: mean/cov dimension mismatch");
  }
};

/// scale * det(2*pi*cov)^(-1/2) * exp(-(x-mean)^T cov^{-1} (x-mean) / 2),
/// principal branch of the complex square root. With a PSD real part the
/// determinant never crosses the negative real axis from below, so the
/// principal branch is single-valued over all inputs we form.
inline Complex complex_gaussian_eval(const Vector& x, const ComplexGaussian& g) {
  if (x.size() != g.cov.dim())
    throw ConfigError("complex_gaussian_eval: dimension mismatch");
  const CVector z = x.cast<Complex>() - g.mean;
  const Complex quad = z.transpose() * (g.cov.inverse() * z);
  const Complex det2pi =
      std::pow(2.0 * std::numbers::pi, g.cov.dim()) * g.cov.determinant();
  return g.scale * std::exp(-0.5 * quad) / std::sqrt(det2pi);
}

/// Pointwise product identity: result(x) == a(x) * b(x) for all x.
/// Covariance (A^{-1}+B^{-1})^{-1}, mean C(A^{-1}a + B^{-1}b), and the
/// residual factor folded into the scale.
inline ComplexGaussian gaussian_product(const ComplexGaussian& a,
                                        const ComplexGaussian& b) {
  if (a.cov.dim() != b.cov.dim())
    throw ConfigError("gaussian_product: dimension mismatch");
  const int d = a.cov.dim();
  const CMatrix prec = a.cov.inverse() + b.cov.inverse();
  Eigen::FullPivLU<CMatrix> lu(prec);
  if (!lu.isInvertible())
    throw DegenerateError("gaussian_product: singular precision sum");
  const CMatrix cov = lu.inverse();
  const CVector mean = cov * (a.cov.inverse() * a.mean + b.cov.inverse() * b.mean);

  // residual: normalized Gaussian of covariance A+B evaluated at a.mean-b.mean
  const CMatrix sum = a.cov.matrix() + b.cov.matrix();
  Eigen::FullPivLU<CMatrix> lus(sum);
  const CVector dm = a.mean - b.mean;
  const Complex quad = dm.transpose() * (lus.inverse() * dm);
  const Complex det2pi = std::pow(2.0 * std::numbers::pi, d) * lus.determinant();
  const Complex residual = std::exp(-0.5 * quad) / std::sqrt(det2pi);

  // split cov back into symmetric real/imag parts
  Matrix re = 0.5 * (cov.real() + cov.real().transpose());
  Matrix im = 0.5 * (cov.imag() + cov.imag().transpose());
  return ComplexGaussian(mean, ComplexCovariance(std::move(re), std::move(im)),
                         a.scale * b.scale * residual);
}

/// Convolution identity: means add, covariances add, scales multiply.
inline ComplexGaussian gaussian_convolution(const ComplexGaussian& a,
                                            const ComplexGaussian& b) {
  if (a.cov.dim() != b.cov.dim())
    throw ConfigError("gaussian_convolution: dimension mismatch");
  return ComplexGaussian(
      CVector(a.mean + b.mean),
      ComplexCovariance(a.cov.real_part() + b.cov.real_part(),
                        a.cov.imag_part() + b.cov.imag_part()),
      a.scale * b.scale);
}

}  // namespace qinterf
