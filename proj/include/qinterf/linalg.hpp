#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "qinterf/common.hpp"

namespace qinterf {

using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline void check_finite(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw ConfigError(std::string(what) + ": non-finite component");
}

/// Symmetric positive-definite covariance with cached inverse/determinant.
///
/// Symmetry is required to 1e-12 (relative to the largest entry) and
/// positive definiteness is checked by eigenvalue with tolerance 1e-10
/// relative to the largest eigenvalue.
class Covariance {
 public:
  explicit Covariance(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
      throw ConfigError("Covariance: matrix must be square, d >= 1");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw ConfigError("Covariance: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    if (!(lmax > 0.0) || lmin <= 1e-10 * lmax)
      throw ConfigError("Covariance: matrix not positive definite");
    max_eig_ = lmax;
    det_ = es.eigenvalues().prod();
    inv_ = es.eigenvectors() *
           es.eigenvalues().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
    if (!std::isfinite(det_) || !(det_ > 0.0))
      throw ConfigError("Covariance: determinant not finite and positive");
  }

  static Covariance isotropic(int dim, double variance) {
    return Covariance(Matrix::Identity(dim, dim) * variance);
  }

  static Covariance diagonal(const Vector& variances) {
    return Covariance(Matrix(variances.asDiagonal()));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const Matrix& inverse() const { return inv_; }
  double determinant() const { return det_; }
  double max_eigenvalue() const { return max_eig_; }

  Covariance scaled(double c) const { return Covariance(m_ * c); }

 private:
  Matrix m_;
  Matrix inv_;
  double det_ = 0.0;
  double max_eig_ = 0.0;
};

/// Complex symmetric covariance R + iI with positive-semidefinite real part.
/// With a zero imaginary part this reduces to a real covariance.
class ComplexCovariance {
 public:
  ComplexCovariance(Matrix real_part, Matrix imag_part)
      : re_(std::move(real_part)), im_(std::move(imag_part)) {
    if (re_.rows() != re_.cols() || im_.rows() != im_.cols() ||
        re_.rows() != im_.rows() || re_.rows() < 1)
      throw ConfigError("ComplexCovariance: parts must be square, same size");
    const double scale = std::max(
        1.0, std::max(re_.cwiseAbs().maxCoeff(), im_.cwiseAbs().maxCoeff()));
    if ((re_ - re_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale ||
        (im_ - im_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw ConfigError("ComplexCovariance: parts not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(re_);
    if (es.eigenvalues().minCoeff() < -1e-10 * scale)
      throw ConfigError("ComplexCovariance: real part not PSD");
    CMatrix m = re_.cast<Complex>() + Complex(0, 1) * im_.cast<Complex>();
    Eigen::FullPivLU<CMatrix> lu(m);
    det_ = lu.determinant();
    if (!lu.isInvertible() || std::abs(det_) < 1e-300)
      throw DegenerateError("ComplexCovariance: singular matrix");
    inv_ = lu.inverse();
    m_ = std::move(m);
  }

  explicit ComplexCovariance(const Covariance& real)
      : ComplexCovariance(real.matrix(),
                          Matrix::Zero(real.dim(), real.dim())) {}

  int dim() const { return static_cast<int>(re_.rows()); }
  const Matrix& real_part() const { return re_; }
  const Matrix& imag_part() const { return im_; }
  const CMatrix& matrix() const { return m_; }
  const CMatrix& inverse() const { return inv_; }
  Complex determinant() const { return det_; }

 private:
  Matrix re_, im_;
  CMatrix m_, inv_;
  Complex det_;
};

inline Vector vec1(double x) {
  Vector v(1);
  v << x;
  return v;
}

inline Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

}  // namespace qinterf
