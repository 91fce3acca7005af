#include "imexstab/boundary.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace imexstab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_samples(int n_samples) {
  if (n_samples < 4) throw std::invalid_argument("n_samples must be >= 4");
}

struct RayOutcome {
  BoundaryPoint point;
  bool interior_violation = false;
  std::string message;
};

template <typename PerRay>
BoundaryCurve sweep(const std::string& method, int n_samples, bool parallel, PerRay per_ray) {
  BoundaryCurve curve;
  curve.method = method;
  curve.points.resize(static_cast<size_t>(n_samples));
  std::vector<RayOutcome> outcomes(static_cast<size_t>(n_samples));

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < n_samples; ++k) {
    const double theta = kTwoPi * k / n_samples;
    RayOutcome& out = outcomes[static_cast<size_t>(k)];
    out.point.theta = theta;
    try {
      per_ray(theta, out.point);
    } catch (const InteriorViolation& e) {
      out.interior_violation = true;
      out.message = e.what();
    } catch (const NumericalError&) {
      out.point.rho = kNaN;
      out.point.status = PointStatus::Failed;
    }
  }

  for (const RayOutcome& out : outcomes)
    if (out.interior_violation) throw InteriorViolation(out.message);
  for (int k = 0; k < n_samples; ++k)
    curve.points[static_cast<size_t>(k)] = outcomes[static_cast<size_t>(k)].point;
  return curve;
}

}  // namespace

BoundaryCurve trace_root_method(const StabilityFunction& sf, int n_samples, double rho_max,
                                bool parallel) {
  require_samples(n_samples);
  return sweep("root", n_samples, parallel, [&](double theta, BoundaryPoint& pt) {
    const RayRoot r = solve_ray(sf, theta, rho_max);
    pt.rho = r.rho;
    pt.status = r.used_fallback ? PointStatus::Fallback : PointStatus::Ok;
  });
}

BoundaryCurve trace_definition_method(const StabilityFunction& sf, int n_samples,
                                      double rho_max, double tol, bool parallel) {
  require_samples(n_samples);
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  return sweep("definition", n_samples, parallel, [&](double theta, BoundaryPoint& pt) {
    const RaySystem rs = build_ray_system(sf, theta);
    const auto rho = definition_radius(sf, rs, rho_max, tol);
    if (rho) {
      pt.rho = *rho;
      pt.status = PointStatus::Ok;
    } else {
      pt.rho = kNaN;
      pt.status = PointStatus::Failed;
    }
  });
}

BoundaryCurve trace_continuation_method(const StabilityFunction& sf, double theta_step,
                                        double rho_max) {
  if (theta_step <= 0.0) throw std::invalid_argument("theta_step must be positive");
  const int n = static_cast<int>(std::llround(kTwoPi / theta_step));
  if (n < 4) throw std::invalid_argument("theta_step too large, fewer than 4 samples");

  BoundaryCurve curve;
  curve.method = "continuation";
  curve.points.resize(static_cast<size_t>(n));

  const RayRoot seed = solve_ray(sf, 0.0, rho_max);  // seed failure propagates
  const bool degenerate = build_ray_system(sf, 0.0).F.degree_x() == 0;

  double y = seed.y_witness;
  double rho = seed.rho;
  bool have_state = true;
  curve.points[0] = {0.0, seed.rho, PointStatus::Ok};

  const double fd_delta = 1e-6;
  for (int k = 1; k < n; ++k) {
    const double theta_prev = kTwoPi * (k - 1) / n;
    const double theta = kTwoPi * k / n;
    BoundaryPoint& pt = curve.points[static_cast<size_t>(k)];
    pt.theta = theta;

    if (!have_state) {
      // Re-seed after a failed stretch.
      try {
        const RayRoot r = solve_ray(sf, theta, rho_max);
        y = r.y_witness;
        rho = r.rho;
        have_state = true;
        pt.rho = rho;
        pt.status = PointStatus::Ok;
      } catch (const InteriorViolation&) {
        throw;
      } catch (const NumericalError&) {
        pt.rho = kNaN;
        pt.status = PointStatus::Failed;
      }
      continue;
    }

    const RaySystem rs = build_ray_system(sf, theta);
    bool converged = false;

    if (degenerate) {
      // One-dimensional branch: F depends on rho alone.
      const UniPoly f = rs.F.x_coefficient(0).trimmed(1e-13);
      const UniPoly df = f.derivative();
      double r = rho;
      for (int it = 0; it < 20; ++it) {
        const double d = df(r);
        if (d == 0.0) break;
        const double step = f(r) / d;
        r -= step;
        if (!std::isfinite(r)) break;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(r))) {
          converged = std::abs(f(r)) <= 1e-8 * rs.coeff_scale;
          break;
        }
      }
      if (converged && r > 0.0 && r <= rho_max) {
        rho = r;
        pt.rho = rho;
        pt.status = PointStatus::Ok;
        continue;
      }
    } else {
      // Euler predictor from the implicit-function-theorem tangent.
      const RaySystem rs_prev = build_ray_system(sf, theta_prev);
      const RaySystem rs_p = build_ray_system(sf, theta_prev + fd_delta);
      const RaySystem rs_m = build_ray_system(sf, theta_prev - fd_delta);
      const double f_th = (rs_p.F(y, rho) - rs_m.F(y, rho)) / (2.0 * fd_delta);
      const double g_th = (rs_p.G(y, rho) - rs_m.G(y, rho)) / (2.0 * fd_delta);
      const double a = rs_prev.G(y, rho);                    // dF/dy
      const double b = rs_prev.F.derivative_y()(y, rho);     // dF/drho
      const double c = rs_prev.G.derivative_x()(y, rho);
      const double d = rs_prev.G.derivative_y()(y, rho);
      const double det = a * d - b * c;
      double yp = y, rp = rho;
      if (std::abs(det) > 1e-300) {
        const double h = theta - theta_prev;
        yp += h * (-f_th * d + b * g_th) / det;
        rp += h * (-a * g_th + f_th * c) / det;
      }

      // Newton corrector at the advanced theta.
      const BiPoly f_rho = rs.F.derivative_y();
      const BiPoly g_y = rs.G.derivative_x();
      const BiPoly g_rho = rs.G.derivative_y();
      for (int it = 0; it < 20; ++it) {
        const double fv = rs.F(yp, rp);
        const double gv = rs.G(yp, rp);
        const double ja = rs.G(yp, rp);
        const double jb = f_rho(yp, rp);
        const double jc = g_y(yp, rp);
        const double jd = g_rho(yp, rp);
        const double jdet = ja * jd - jb * jc;
        if (std::abs(jdet) < 1e-300) break;
        const double dy = (fv * jd - jb * gv) / jdet;
        const double dr = (ja * gv - fv * jc) / jdet;
        yp -= dy;
        rp -= dr;
        if (!std::isfinite(yp) || !std::isfinite(rp)) break;
        if (std::abs(dy) + std::abs(dr) < 1e-13 * (1.0 + std::abs(yp) + std::abs(rp))) {
          converged = std::abs(rs.F(yp, rp)) <= 1e-8 * rs.coeff_scale &&
                      std::abs(rs.G(yp, rp)) <= 1e-8 * rs.coeff_scale;
          break;
        }
      }
      if (converged && rp > 0.0 && rp <= rho_max) {
        y = yp;
        rho = rp;
        pt.rho = rho;
        pt.status = PointStatus::Ok;
        continue;
      }
    }

    pt.rho = kNaN;
    pt.status = PointStatus::Failed;
    have_state = false;
  }
  return curve;
}

double area(const BoundaryCurve& curve) {
  if (curve.points.size() < 4) throw NumericalError("area: need at least 4 points");
  std::string bad;
  for (const BoundaryPoint& pt : curve.points)
    if (pt.status == PointStatus::Failed) {
      if (!bad.empty()) bad += ", ";
      bad += "theta=" + std::to_string(pt.theta);
    }
  if (!bad.empty()) throw NumericalError("area: failed rays at " + bad);
  double acc = 0.0;
  for (const BoundaryPoint& pt : curve.points) acc += 0.5 * pt.rho * pt.rho;
  return acc / static_cast<double>(curve.points.size()) * kTwoPi;
}

}  // namespace imexstab
