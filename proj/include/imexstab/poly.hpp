#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace imexstab {

using cplx = std::complex<double>;

/// Dense univariate polynomial, coeffs[k] multiplies x^k.
class UniPoly {
 public:
  UniPoly() : coeffs_{0.0} {}
  explicit UniPoly(std::vector<double> coeffs);

  static UniPoly zero() { return UniPoly(); }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;

  double operator()(double x) const;
  cplx operator()(cplx x) const;

  UniPoly derivative() const;

  /// Drops trailing coefficients with magnitude <= rel_tol * max|coeff|.
  UniPoly trimmed(double rel_tol = 0.0) const;

  double max_abs_coeff() const;

 private:
  std::vector<double> coeffs_;  // never empty
};

/// Dense real bivariate polynomial; coeff(j,k) multiplies x^j * y^k.
class BiPoly {
 public:
  BiPoly() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit BiPoly(Eigen::MatrixXd c);

  const Eigen::MatrixXd& coeffs() const { return c_; }
  double coeff(int j, int k) const;
  int degree_x() const { return static_cast<int>(c_.rows()) - 1; }
  int degree_y() const { return static_cast<int>(c_.cols()) - 1; }

  double operator()(double x, double y) const;
  cplx operator()(cplx x, cplx y) const;

  /// d/dx, applied coefficient-wise.
  BiPoly derivative_x() const;

  /// d/dy.
  BiPoly derivative_y() const;

  /// Fixes y = y0; returns the univariate polynomial in x.
  UniPoly at_y(double y0) const;

  /// Coefficient of x^j, as a univariate polynomial in y.
  UniPoly x_coefficient(int j) const;

  /// Removes all-zero trailing rows/columns (relative threshold).
  BiPoly trimmed(double rel_tol = 0.0) const;

  double max_abs_coeff() const;

 private:
  Eigen::MatrixXd c_;
};

/// Complex-coefficient bivariate polynomial over two real variables.
/// Intermediate for |.|^2 expansions; not part of any public result.
class ComplexBiPoly {
 public:
  ComplexBiPoly() : c_(Eigen::MatrixXcd::Zero(1, 1)) {}
  explicit ComplexBiPoly(Eigen::MatrixXcd c) : c_(std::move(c)) {}

  const Eigen::MatrixXcd& coeffs() const { return c_; }
  int degree_x() const { return static_cast<int>(c_.rows()) - 1; }
  int degree_y() const { return static_cast<int>(c_.cols()) - 1; }

  cplx operator()(double x, double y) const;

  ComplexBiPoly conj_coeffs() const { return ComplexBiPoly(c_.conjugate()); }

  friend ComplexBiPoly operator*(const ComplexBiPoly& a, const ComplexBiPoly& b);
  friend ComplexBiPoly operator-(const ComplexBiPoly& a, const ComplexBiPoly& b);

  /// Real part of the coefficients; *imag_residue reports max |imag|.
  BiPoly real_part(double* imag_residue = nullptr) const;

 private:
  Eigen::MatrixXcd c_;
};

}  // namespace imexstab
