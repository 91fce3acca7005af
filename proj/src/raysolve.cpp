#include "imexstab/raysolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Eigenvalues>

namespace imexstab {
namespace {

constexpr double kRhoEps = 1e-9;
constexpr double kImagResidRel = 1e-10;
constexpr double kVerifyRel = 1e-8;

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// Parlett-Reinsch balancing, radix 2; exact in floating point.
void balance(Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double sum = c + r;
      while (c < r / 2.0) {
        f *= 2.0;
        c *= 4.0;
      }
      while (c > r * 2.0) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * sum) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

// Sylvester determinant of f (degree n) and g (degree m), coefficient
// vectors ascending, sizes n+1 and m+1. Rows are equilibrated to unit norm
// before elimination; normalized receives the determinant of the
// equilibrated matrix, a scale-free singularity indicator.
double sylvester_det(const std::vector<double>& f, const std::vector<double>& g,
                     double* normalized) {
  const int n = static_cast<int>(f.size()) - 1;
  const int m = static_cast<int>(g.size()) - 1;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n + m, n + m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s(i, i + k) = f[static_cast<size_t>(n - k)];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(m + i, i + k) = g[static_cast<size_t>(m - k)];
  double scale = 1.0;
  for (int i = 0; i < n + m; ++i) {
    const double norm = s.row(i).norm();
    if (norm == 0.0) {
      if (normalized) *normalized = 0.0;
      return 0.0;
    }
    s.row(i) /= norm;
    scale *= norm;
  }
  const double det_eq = s.partialPivLu().determinant();
  if (normalized) *normalized = std::abs(det_eq);
  return det_eq * scale;
}

std::vector<double> coeff_column(const BiPoly& p, double rho) {
  const UniPoly u = p.at_y(rho);
  return u.coeffs();
}

// ---- Chebyshev machinery for the resultant in rho -----------------------
//
// The resultant's degree bound grows like 8 s^2; monomial interpolation at
// such degrees is hopelessly ill-conditioned, so the samples are carried in
// the Chebyshev basis on the scaled variable t = rho/c - 1 and roots come
// from the colleague matrix. The monomial form is produced only for the
// public UniPoly result.

// Coefficients a_k of sum a_k T_k(t) from values at the first-kind nodes
// t_i = cos(pi (2i+1) / 2n).
std::vector<double> cheb_coeffs_from_values(const Eigen::VectorXd& vals) {
  const int n = static_cast<int>(vals.size());
  std::vector<double> a(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += vals(i) * std::cos(k * std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
    a[static_cast<size_t>(k)] = acc * 2.0 / n;
  }
  a[0] *= 0.5;
  return a;
}

double clenshaw(const std::vector<double>& a, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (size_t k = a.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + a[0];
}

// Real roots of sum a_k T_k(t) inside [-1, 1], via the balanced colleague
// matrix, each polished by one Newton step.
std::vector<double> cheb_real_roots(std::vector<double> a) {
  double amax = 0.0;
  for (double c : a) amax = std::max(amax, std::abs(c));
  while (a.size() > 1 && std::abs(a.back()) <= 1e-13 * amax) a.pop_back();
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 1) return {};

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) {
    m(0, 0) = -a[0] / a[1];
  } else {
    m(0, 1) = 1.0;
    for (int i = 1; i < n - 1; ++i) {
      m(i, i - 1) = 0.5;
      m(i, i + 1) = 0.5;
    }
    for (int j = 0; j < n; ++j)
      m(n - 1, j) = -0.5 * a[static_cast<size_t>(j)] / a[static_cast<size_t>(n)];
    m(n - 1, n - 2) += 0.5;
  }
  balance(m);

  std::vector<double> deriv(a.size() > 1 ? a.size() - 1 : 1, 0.0);
  {
    // d/dt of the Chebyshev series via the standard recurrence.
    std::vector<double> d(a.size() + 1, 0.0);
    for (int k = n; k >= 1; --k)
      d[static_cast<size_t>(k - 1)] = d[static_cast<size_t>(k + 1)] + 2.0 * k * a[static_cast<size_t>(k)];
    d[0] *= 0.5;
    deriv.assign(d.begin(), d.begin() + std::max<size_t>(1, a.size() - 1));
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    const cplx ev = es.eigenvalues()(i);
    // Generous imaginary cutoff: double roots (symmetric rays) split into
    // conjugate pairs under rounding; downstream verification discards
    // anything spurious that slips through.
    if (std::abs(ev.imag()) > 1e-3 * (1.0 + std::abs(ev.real()))) continue;
    double t = ev.real();
    if (t < -1.0 - 1e-8 || t > 1.0 + 1e-8) continue;
    const double d = clenshaw(deriv, t);
    if (d != 0.0) t -= clenshaw(a, t) / d;
    roots.push_back(std::clamp(t, -1.0, 1.0));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct ResultantCheb {
  double mid = 0.0;                // rho = mid + half * t
  double half = 0.0;
  std::vector<double> coeffs;      // Chebyshev coefficients in t
};

ResultantCheb resultant_cheb(const RaySystem& rs, double lo, double hi) {
  const int dy_f = rs.F.degree_x();
  const int dr_f = rs.F.degree_y();
  const int dy_g = rs.G.degree_x();
  const int dr_g = rs.G.degree_y();
  const int deg_bound = dr_f * dy_g + dr_g * dy_f;
  const int n_samples = deg_bound + 1;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  Eigen::VectorXd vals(n_samples);
  double norm_max = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double t = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n_samples));
    const double rho = mid + half * t;
    double norm_det = 0.0;
    vals(i) = sylvester_det(coeff_column(rs.F, rho), coeff_column(rs.G, rho), &norm_det);
    norm_max = std::max(norm_max, norm_det);
  }
  if (norm_max <= 1e-10)
    throw ZeroResultant("resultant_in_rho: resultant vanishes identically (shared factor)");
  return ResultantCheb{mid, half, cheb_coeffs_from_values(vals)};
}

// Ascending candidate radii in [lo, hi] from the resultant's real roots.
// The resultant spans many orders of magnitude over a wide rho range, so
// callers should keep windows narrow for full relative accuracy.
std::vector<double> resultant_rho_candidates(const RaySystem& rs, double lo, double hi) {
  if (rs.G.degree_x() == 0) {
    // Res(F, g0) = g0^{deg_y F}: candidates are the roots of g0 itself.
    const UniPoly g0 = rs.G.x_coefficient(0).trimmed(1e-13);
    if (g0.is_zero()) throw ZeroResultant("resultant_in_rho: G identically zero");
    if (g0.degree() == 0) return {};
    return real_roots(g0);
  }
  const ResultantCheb rc = resultant_cheb(rs, lo, hi);
  std::vector<double> out;
  for (double t : cheb_real_roots(rc.coeffs)) out.push_back(rc.mid + rc.half * t);
  return out;
}

UniPoly unipoly_pow(const UniPoly& base, int e) {
  std::vector<double> acc{1.0};
  for (int i = 0; i < e; ++i) {
    std::vector<double> next(acc.size() + base.coeffs().size() - 1, 0.0);
    for (size_t a = 0; a < acc.size(); ++a)
      for (size_t b = 0; b < base.coeffs().size(); ++b)
        next[a + b] += acc[a] * base.coeffs()[b];
    acc = std::move(next);
  }
  return UniPoly(std::move(acc));
}

struct Polished {
  double y, rho, fres, gres;
};

std::optional<Polished> newton_polish(const RaySystem& rs, const BiPoly& f_rho,
                                      const BiPoly& g_y, const BiPoly& g_rho, double y,
                                      double rho) {
  for (int it = 0; it < 15; ++it) {
    const double fv = rs.F(y, rho);
    const double gv = rs.G(y, rho);
    const double a = rs.G(y, rho);      // dF/dy
    const double b = f_rho(y, rho);     // dF/drho
    const double c = g_y(y, rho);       // dG/dy
    const double d = g_rho(y, rho);     // dG/drho
    const double det = a * d - b * c;
    if (std::abs(det) < 1e-300) break;
    const double dy = (fv * d - b * gv) / det;
    const double dr = (a * gv - fv * c) / det;
    y -= dy;
    rho -= dr;
    if (!std::isfinite(y) || !std::isfinite(rho)) return std::nullopt;
    if (std::abs(dy) + std::abs(dr) < 1e-13 * (1.0 + std::abs(y) + std::abs(rho))) break;
  }
  return Polished{y, rho, std::abs(rs.F(y, rho)), std::abs(rs.G(y, rho))};
}

}  // namespace

bool ray_membership(const StabilityFunction& sf, const RaySystem& rs, double rho) {
  try {
    if (min_f_over_y(rs, rho).first < 0.0) return false;
  } catch (const NotLStableAtInfinity&) {
    return false;
  }
  if (sf.q.trimmed().degree() >= 1) {
    const cplx z2 = cplx(-1.0, 0.0) + rho * std::polar(1.0, rs.theta);
    if (std::abs(stiff_limit(sf, z2)) > 1.0) return false;
  }
  return true;
}

std::optional<double> definition_radius(const StabilityFunction& sf, const RaySystem& rs,
                                        double rho_max, double tol) {
  const int kGrid = 1024;
  const double step = rho_max / kGrid;
  if (!ray_membership(sf, rs, 0.0))
    throw InteriorViolation("center z2 = -1 is not inside S");
  double lo = 0.0;
  bool found = false;
  double hi = 0.0;
  for (int j = 1; j <= kGrid; ++j) {
    const double r = j * step;
    if (!ray_membership(sf, rs, r)) {
      hi = r;
      lo = (j - 1) * step;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (ray_membership(sf, rs, mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RaySystem build_ray_system(const StabilityFunction& sf, double theta) {
  const cplx u = std::polar(1.0, theta);
  const cplx iu(0.0, 1.0);

  // h(y, rho) = p(iy, -1 + rho e^{i theta}) as a complex bivariate polynomial.
  const BiPoly& p = sf.p;
  const int d1 = p.degree_x();
  const int d2 = p.degree_y();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d1 + 1, d2 + 1);
  for (int j = 0; j <= d1; ++j) {
    const cplx ipow = std::pow(iu, j);
    for (int m = 0; m <= d2; ++m) {
      cplx acc = 0.0;
      for (int k = m; k <= d2; ++k)
        acc += p.coeff(j, k) * binom(k, m) * ((k - m) % 2 ? -1.0 : 1.0);
      h(j, m) = ipow * acc * std::pow(u, m);
    }
  }
  const ComplexBiPoly hc{std::move(h)};

  // q(iy), embedded with rho-degree 0.
  const int dq = sf.q.degree();
  Eigen::MatrixXcd qm = Eigen::MatrixXcd::Zero(dq + 1, 1);
  for (int j = 0; j <= dq; ++j) qm(j, 0) = sf.q.coeff(j) * std::pow(iu, j);
  const ComplexBiPoly qc{std::move(qm)};

  const ComplexBiPoly fc = qc * qc.conj_coeffs() - hc * hc.conj_coeffs();

  double imag_resid = 0.0;
  BiPoly f = fc.real_part(&imag_resid);
  const double scale = std::max(f.max_abs_coeff(), 1e-300);
  if (imag_resid > kImagResidRel * scale)
    throw NumericalError("build_ray_system: imaginary coefficient residue too large");
  f = f.trimmed(1e-13);

  RaySystem rs;
  rs.theta = theta;
  rs.F = f;
  rs.G = f.derivative_x();
  rs.coeff_scale = f.max_abs_coeff();
  rs.imag_residue = imag_resid;
  return rs;
}

std::vector<double> real_roots(const UniPoly& u) {
  if (u.is_zero()) throw NumericalError("real_roots: zero polynomial");
  const UniPoly t = u.trimmed(1e-13);
  const int n = t.degree();
  if (n == 0) return {};

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = t.coeff(n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -t.coeff(i) / lead;
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  balance(comp);

  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  const UniPoly du = u.derivative();
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    const cplx ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-7 * (1.0 + std::abs(ev.real()))) continue;
    double x = ev.real();
    const double d = du(x);
    if (d != 0.0) x -= u(x) / d;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

UniPoly resultant_in_rho(const RaySystem& rs, double rho_max) {
  const int dy_f = rs.F.degree_x();
  const int dy_g = rs.G.degree_x();
  if (dy_f < 1) throw NumericalError("resultant_in_rho: F constant in y");

  if (dy_g == 0) {
    // Res(F, g0) = g0^{deg_y F}.
    const UniPoly g0 = rs.G.x_coefficient(0).trimmed(1e-13);
    if (g0.is_zero()) throw ZeroResultant("resultant_in_rho: G identically zero");
    return unipoly_pow(g0, dy_f);
  }

  const ResultantCheb rc = resultant_cheb(rs, 0.0, rho_max);
  const double c = rc.half;

  // Chebyshev -> monomial coefficients in t (T_{k+1} = 2t T_k - T_{k-1}).
  const size_t n = rc.coeffs.size();
  std::vector<double> a(n, 0.0);
  std::vector<double> tk_prev{1.0};      // T_0
  std::vector<double> tk{0.0, 1.0};      // T_1
  a[0] += rc.coeffs[0];
  for (size_t k = 1; k < n; ++k) {
    for (size_t j = 0; j < tk.size(); ++j) a[j] += rc.coeffs[k] * tk[j];
    if (k + 1 < n) {
      std::vector<double> tk_next(tk.size() + 1, 0.0);
      for (size_t j = 0; j < tk.size(); ++j) tk_next[j + 1] = 2.0 * tk[j];
      for (size_t j = 0; j < tk_prev.size(); ++j) tk_next[j] -= tk_prev[j];
      tk_prev = std::move(tk);
      tk = std::move(tk_next);
    }
  }

  // Compose t = (rho - c)/c by Horner in the monomial basis. Note this
  // composition is ill-conditioned at high degree; internal consumers take
  // roots from the Chebyshev form instead (resultant_rho_candidates).
  std::vector<double> res{a[n - 1]};
  for (size_t j = n - 1; j-- > 0;) {
    std::vector<double> next(res.size() + 1, 0.0);
    for (size_t k = 0; k < res.size(); ++k) {
      next[k + 1] += res[k] / c;
      next[k] -= res[k];
    }
    next[0] += a[j];
    res = std::move(next);
  }
  return UniPoly(std::move(res)).trimmed(1e-10);
}

std::pair<double, double> min_f_over_y(const RaySystem& rs, double rho) {
  const UniPoly f = rs.F.at_y(rho).trimmed(1e-13);
  const int d = f.degree();
  if (d == 0) return {f.coeff(0), 0.0};
  if (d % 2 != 0 || f.coeff(d) <= 0.0)
    throw NotLStableAtInfinity("min_f_over_y: F unbounded below in y");
  const std::vector<double> ys = real_roots(f.derivative());
  double best = f(0.0), arg = 0.0;
  for (double y : ys) {
    const double v = f(y);
    if (v < best) {
      best = v;
      arg = y;
    }
  }
  return {best, arg};
}

RayRoot smallest_valid_root(const RaySystem& rs, double rho_max) {
  const int dy = rs.F.degree_x();

  if (dy == 0) {
    // Explicit-only degenerate path: F depends on rho alone.
    const UniPoly f = rs.F.x_coefficient(0).trimmed(1e-13);
    if (f(0.0) <= 0.0) throw InteriorViolation("center z2 = -1 is not inside S");
    const UniPoly df = f.derivative();
    for (double r : real_roots(f)) {
      if (r <= kRhoEps || r > rho_max * (1.0 + 1e-12)) continue;
      const double d = df(r);
      if (d != 0.0) r -= f(r) / d;
      RayRoot out;
      out.theta = rs.theta;
      out.rho = std::min(r, rho_max);
      out.y_witness = 0.0;
      out.f_residual = std::abs(f(r));
      out.g_residual = 0.0;
      return out;
    }
    throw NoRootOnRay("no boundary radius <= rho_max on this ray");
  }

  const UniPoly lead = rs.F.x_coefficient(dy);
  if (lead(0.0) <= 0.0)
    throw NotLStableAtInfinity("leading y-coefficient of F not positive");
  if (min_f_over_y(rs, 0.0).first <= 0.0)
    throw InteriorViolation("center z2 = -1 is not inside S");

  const BiPoly f_rho = rs.F.derivative_y();
  const BiPoly g_y = rs.G.derivative_x();
  const BiPoly g_rho = rs.G.derivative_y();
  const double tol = kVerifyRel * rs.coeff_scale;

  // Scan ascending windows of width 2 so each interpolant keeps full
  // relative accuracy (the resultant grows by many orders of magnitude
  // across [0, rho_max]); the first verified root wins.
  constexpr double kWindow = 2.0;
  for (double lo = 0.0; lo < rho_max; lo += kWindow) {
    const double hi = std::min(lo + kWindow, rho_max);
    std::vector<double> candidates;
    try {
      candidates = resultant_rho_candidates(rs, lo, hi);
    } catch (const ZeroResultant&) {
      // An identically-zero resultant already shows on the first window;
      // later windows can merely be ill-conditioned at large rho.
      if (lo == 0.0) throw;
      continue;
    }
    for (double cand : candidates) {
      if (cand <= kRhoEps || cand > rho_max * (1.0 + 1e-9)) continue;
      const UniPoly g_at = rs.G.at_y(cand).trimmed(1e-13);
      if (g_at.is_zero()) continue;
      std::optional<Polished> best;
      for (double y : real_roots(g_at)) {
        if (std::abs(rs.F(y, cand)) > 1e-2 * rs.coeff_scale * (1.0 + std::abs(cand)))
          continue;  // complex-y pairing or spurious resultant root
        auto pol = newton_polish(rs, f_rho, g_y, g_rho, y, cand);
        if (!pol) continue;
        if (pol->rho <= kRhoEps || pol->rho > rho_max * (1.0 + 1e-9)) continue;
        if (std::abs(pol->rho - cand) > 1e-2 * (1.0 + cand)) continue;  // drifted off
        if (pol->fres > tol || pol->gres > tol) continue;
        if (!best || pol->rho < best->rho) best = pol;
      }
      if (best) {
        RayRoot out;
        out.theta = rs.theta;
        out.rho = std::min(best->rho, rho_max);
        out.y_witness = best->y;
        out.f_residual = best->fres;
        out.g_residual = best->gres;
        return out;
      }
    }
    if (rs.G.degree_x() == 0) break;  // candidates don't depend on the window
  }
  throw NoRootOnRay("no verified boundary radius <= rho_max on this ray");
}

RayRoot solve_ray(const StabilityFunction& sf, double theta, double rho_max) {
  RaySystem rs = build_ray_system(sf, theta);
  try {
    return smallest_valid_root(rs, rho_max);
  } catch (const ZeroResultant&) {
    for (double d : {1e-7, -1e-7}) {
      try {
        RayRoot r = smallest_valid_root(build_ray_system(sf, theta + d), rho_max);
        r.theta = theta;
        return r;
      } catch (const ZeroResultant&) {
      }
    }
    const auto rho = definition_radius(sf, rs, rho_max, 1e-10);
    if (!rho) throw NoRootOnRay("degenerate resultant and no membership sign change");
    RayRoot out;
    out.theta = theta;
    out.rho = *rho;
    out.y_witness = min_f_over_y(rs, *rho).second;
    out.f_residual = std::abs(rs.F(out.y_witness, out.rho));
    out.g_residual = std::abs(rs.G(out.y_witness, out.rho));
    out.used_fallback = true;
    return out;
  }
}

}  // namespace imexstab
