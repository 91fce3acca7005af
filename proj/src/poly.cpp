#include "imexstab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imexstab {

UniPoly::UniPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("UniPoly: non-finite coefficient");
  }
}

double UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<size_t>(k)];
}

bool UniPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double UniPoly::operator()(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

cplx UniPoly::operator()(cplx x) const {
  cplx v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<double> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UniPoly(std::move(d));
}

UniPoly UniPoly::trimmed(double rel_tol) const {
  const double thresh = rel_tol * max_abs_coeff();
  size_t n = coeffs_.size();
  while (n > 1 && std::abs(coeffs_[n - 1]) <= thresh) --n;
  std::vector<double> out(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n));
  if (n == 1 && std::abs(out[0]) <= thresh) out[0] = 0.0;
  return UniPoly(std::move(out));
}

double UniPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

BiPoly::BiPoly(Eigen::MatrixXd c) : c_(std::move(c)) {
  if (c_.rows() == 0 || c_.cols() == 0) c_ = Eigen::MatrixXd::Zero(1, 1);
  if (!c_.allFinite()) throw std::invalid_argument("BiPoly: non-finite coefficient");
}

double BiPoly::coeff(int j, int k) const {
  if (j < 0 || k < 0 || j >= c_.rows() || k >= c_.cols()) return 0.0;
  return c_(j, k);
}

double BiPoly::operator()(double x, double y) const {
  // Horner in x over Horner-in-y row values.
  double v = 0.0;
  for (int j = static_cast<int>(c_.rows()) - 1; j >= 0; --j) {
    double row = 0.0;
    for (int k = static_cast<int>(c_.cols()) - 1; k >= 0; --k) row = row * y + c_(j, k);
    v = v * x + row;
  }
  return v;
}

cplx BiPoly::operator()(cplx x, cplx y) const {
  cplx v = 0.0;
  for (int j = static_cast<int>(c_.rows()) - 1; j >= 0; --j) {
    cplx row = 0.0;
    for (int k = static_cast<int>(c_.cols()) - 1; k >= 0; --k) row = row * y + c_(j, k);
    v = v * x + row;
  }
  return v;
}

BiPoly BiPoly::derivative_x() const {
  if (c_.rows() <= 1) return BiPoly();
  Eigen::MatrixXd d(c_.rows() - 1, c_.cols());
  for (int j = 1; j < c_.rows(); ++j) d.row(j - 1) = static_cast<double>(j) * c_.row(j);
  return BiPoly(std::move(d));
}

BiPoly BiPoly::derivative_y() const {
  if (c_.cols() <= 1) return BiPoly();
  Eigen::MatrixXd d(c_.rows(), c_.cols() - 1);
  for (int k = 1; k < c_.cols(); ++k) d.col(k - 1) = static_cast<double>(k) * c_.col(k);
  return BiPoly(std::move(d));
}

UniPoly BiPoly::at_y(double y0) const {
  std::vector<double> out(static_cast<size_t>(c_.rows()));
  for (int j = 0; j < c_.rows(); ++j) {
    double row = 0.0;
    for (int k = static_cast<int>(c_.cols()) - 1; k >= 0; --k) row = row * y0 + c_(j, k);
    out[static_cast<size_t>(j)] = row;
  }
  return UniPoly(std::move(out));
}

UniPoly BiPoly::x_coefficient(int j) const {
  if (j < 0 || j >= c_.rows()) return UniPoly();
  std::vector<double> out(static_cast<size_t>(c_.cols()));
  for (int k = 0; k < c_.cols(); ++k) out[static_cast<size_t>(k)] = c_(j, k);
  return UniPoly(std::move(out));
}

BiPoly BiPoly::trimmed(double rel_tol) const {
  const double thresh = rel_tol * max_abs_coeff();
  int rows = static_cast<int>(c_.rows());
  int cols = static_cast<int>(c_.cols());
  auto row_small = [&](int j) {
    for (int k = 0; k < cols; ++k)
      if (std::abs(c_(j, k)) > thresh) return false;
    return true;
  };
  auto col_small = [&](int k) {
    for (int j = 0; j < rows; ++j)
      if (std::abs(c_(j, k)) > thresh) return false;
    return true;
  };
  while (rows > 1 && row_small(rows - 1)) --rows;
  while (cols > 1 && col_small(cols - 1)) --cols;
  Eigen::MatrixXd out = c_.topLeftCorner(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k)
      if (std::abs(out(j, k)) <= thresh) out(j, k) = 0.0;
  return BiPoly(std::move(out));
}

double BiPoly::max_abs_coeff() const { return c_.cwiseAbs().maxCoeff(); }

cplx ComplexBiPoly::operator()(double x, double y) const {
  cplx v = 0.0;
  for (int j = static_cast<int>(c_.rows()) - 1; j >= 0; --j) {
    cplx row = 0.0;
    for (int k = static_cast<int>(c_.cols()) - 1; k >= 0; --k) row = row * y + c_(j, k);
    v = v * x + row;
  }
  return v;
}

ComplexBiPoly operator*(const ComplexBiPoly& a, const ComplexBiPoly& b) {
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(a.c_.rows() + b.c_.rows() - 1, a.c_.cols() + b.c_.cols() - 1);
  for (int j1 = 0; j1 < a.c_.rows(); ++j1)
    for (int k1 = 0; k1 < a.c_.cols(); ++k1) {
      const cplx v = a.c_(j1, k1);
      if (v == cplx(0.0)) continue;
      for (int j2 = 0; j2 < b.c_.rows(); ++j2)
        for (int k2 = 0; k2 < b.c_.cols(); ++k2) out(j1 + j2, k1 + k2) += v * b.c_(j2, k2);
    }
  return ComplexBiPoly(std::move(out));
}

ComplexBiPoly operator-(const ComplexBiPoly& a, const ComplexBiPoly& b) {
  const long rows = std::max(a.c_.rows(), b.c_.rows());
  const long cols = std::max(a.c_.cols(), b.c_.cols());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, cols);
  out.topLeftCorner(a.c_.rows(), a.c_.cols()) = a.c_;
  out.topLeftCorner(b.c_.rows(), b.c_.cols()) -= b.c_;
  return ComplexBiPoly(std::move(out));
}

BiPoly ComplexBiPoly::real_part(double* imag_residue) const {
  if (imag_residue) *imag_residue = c_.imag().cwiseAbs().maxCoeff();
  return BiPoly(c_.real());
}

}  // namespace imexstab
