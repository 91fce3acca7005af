#include "imexstab/stabfn.hpp"

#include <cmath>
#include <numbers>

namespace imexstab {
namespace {

constexpr double kGridHalfWidth = 2.0;  // fixed, keeps runs deterministic
constexpr double kSnapRel = 1e-12;
constexpr double kCertifyRel = 1e-10;

Eigen::MatrixXcd stage_matrix(const ImexTableau& t, cplx z1, cplx z2) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(t.s, t.s);
  m -= z1 * t.A.cast<cplx>();
  m -= z2 * t.B.cast<cplx>();
  return m;
}

std::vector<double> chebyshev_points(int n, double half_width) {
  std::vector<double> pts(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m)
    pts[static_cast<size_t>(m)] =
        half_width * std::cos(std::numbers::pi * (2.0 * m + 1.0) / (2.0 * n));
  return pts;
}

Eigen::MatrixXd vandermonde(const std::vector<double>& pts) {
  const int n = static_cast<int>(pts.size());
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i) {
    double pw = 1.0;
    for (int j = 0; j < n; ++j) {
      v(i, j) = pw;
      pw *= pts[static_cast<size_t>(i)];
    }
  }
  return v;
}

void snap_small(Eigen::MatrixXd& c) {
  const double thresh = kSnapRel * c.cwiseAbs().maxCoeff();
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j)
      if (std::abs(c(i, j)) <= thresh) c(i, j) = 0.0;
}

}  // namespace

cplx det_p_direct(const ImexTableau& t, cplx z1, cplx z2) {
  Eigen::MatrixXcd m = stage_matrix(t, z1, z2);
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(t.s);
  m += z1 * e * t.w.cast<cplx>().transpose();
  m += z2 * e * t.omega.cast<cplx>().transpose();
  return m.partialPivLu().determinant();
}

cplx det_q_direct(const ImexTableau& t, cplx z1) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(t.s, t.s) - z1 * t.A.cast<cplx>();
  return m.partialPivLu().determinant();
}

StabilityFunction stability_polynomials(const ImexTableau& t) {
  const int n = t.s + 1;
  const std::vector<double> pts = chebyshev_points(n, kGridHalfWidth);
  const Eigen::MatrixXd vand = vandermonde(pts);
  const auto lu = vand.partialPivLu();

  // p on the tensor grid.
  Eigen::MatrixXd vals(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      vals(i, j) = det_p_direct(t, pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)])
                       .real();
  Eigen::MatrixXd pc = lu.solve(vals);            // rows: z1 powers
  pc = lu.solve(pc.transpose()).transpose();      // cols: z2 powers
  snap_small(pc);

  // q on the 1-D grid.
  Eigen::VectorXd qvals(n);
  for (int i = 0; i < n; ++i) qvals(i) = det_q_direct(t, pts[static_cast<size_t>(i)]).real();
  Eigen::VectorXd qc = lu.solve(qvals);
  Eigen::MatrixXd qm = qc;
  snap_small(qm);
  qc = qm;

  StabilityFunction sf;
  sf.s = t.s;
  sf.p = BiPoly(pc).trimmed();
  sf.q = UniPoly(std::vector<double>(qc.data(), qc.data() + n)).trimmed();

  // Certify the interpolation at off-grid complex points.
  const cplx probes[3] = {{0.37, 0.21}, {-1.3, 0.8}, {1.9, -1.1}};
  for (cplx z1 : probes)
    for (cplx z2 : probes) {
      const cplx dp = det_p_direct(t, z1, z2);
      const cplx dq = det_q_direct(t, z1);
      if (std::abs(sf.p(z1, z2) - dp) > kCertifyRel * (1.0 + std::abs(dp)) ||
          std::abs(sf.q(z1) - dq) > kCertifyRel * (1.0 + std::abs(dq)))
        throw NumericalError("stability_polynomials: interpolation failed certification");
    }
  return sf;
}

cplx eval_R(const StabilityFunction& sf, cplx z1, cplx z2) {
  const cplx qv = sf.q(z1);
  if (std::abs(qv) < 1e-300) throw PoleError("eval_R: z1 is a pole of R");
  return sf.p(z1, z2) / qv;
}

cplx scalar_step(const ImexTableau& t, cplx z1, cplx z2) {
  const Eigen::MatrixXcd m = stage_matrix(t, z1, z2);
  const auto lu = m.partialPivLu();
  if (std::abs(lu.determinant()) < 1e-300)
    throw NumericalError("scalar_step: singular stage system");
  const Eigen::VectorXcd stages = lu.solve(Eigen::VectorXcd::Ones(t.s));
  const cplx upd =
      z1 * t.w.cast<cplx>().dot(stages) + z2 * t.omega.cast<cplx>().dot(stages);
  return 1.0 + upd;
}

cplx stiff_limit(const StabilityFunction& sf, cplx z2) {
  const UniPoly q = sf.q.trimmed();
  const int dq = q.degree();
  if (dq < 1) throw NumericalError("stiff_limit: q is constant, R does not depend on z1");
  if (sf.p.degree_x() < dq) return 0.0;
  return sf.p.x_coefficient(dq)(z2) / q.coeff(dq);
}

}  // namespace imexstab
