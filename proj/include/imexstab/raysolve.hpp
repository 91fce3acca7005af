#pragma once

#include <optional>
#include <vector>

#include "imexstab/poly.hpp"
#include "imexstab/stabfn.hpp"

namespace imexstab {

/// Polynomial system of one boundary ray about z2 = -1:
/// F(y, rho) = |q(iy)|^2 - |p(iy, -1 + rho e^{i theta})|^2, G = dF/dy.
struct RaySystem {
  double theta = 0.0;
  BiPoly F;  // (y, rho)
  BiPoly G;
  double coeff_scale = 0.0;    // max |coefficient| of F
  double imag_residue = 0.0;   // max |imag| dropped from the construction
};

/// Verified smallest-rho solution of {F = 0, G = 0} on a ray.
struct RayRoot {
  double theta = 0.0;
  double rho = 0.0;
  double y_witness = 0.0;
  double f_residual = 0.0;
  double g_residual = 0.0;
  bool used_fallback = false;  // degenerate-resultant bisection path
};

struct NoRootOnRay : NumericalError {
  using NumericalError::NumericalError;
};
struct NotLStableAtInfinity : NumericalError {
  using NumericalError::NumericalError;
};
struct InteriorViolation : NumericalError {
  using NumericalError::NumericalError;
};
struct ZeroResultant : NumericalError {
  using NumericalError::NumericalError;
};

/// Expands F by binomial substitution z2 = -1 + rho e^{i theta}, z1 = iy,
/// and drops the (verified small) imaginary coefficient residue.
RaySystem build_ray_system(const StabilityFunction& sf, double theta);

/// All real roots, ascending: balanced companion-matrix eigenvalues of the
/// monic normalization, one Newton polish step. Throws on the zero polynomial.
std::vector<double> real_roots(const UniPoly& u);

/// Res_y(F, G) as a univariate polynomial in rho, by Sylvester-determinant
/// evaluation at Chebyshev samples on [0, rho_max] and interpolation.
/// Throws ZeroResultant when F and G share a factor.
UniPoly resultant_in_rho(const RaySystem& rs, double rho_max);

/// Smallest rho in (1e-9, rho_max] where F and G share a real root y.
/// Candidates come from resultant_in_rho; each is verified against a real
/// y-witness and Newton-polished. Degenerate deg_y F = 0 schemes solve
/// F(rho) = 0 directly.
RayRoot smallest_valid_root(const RaySystem& rs, double rho_max);

/// Like smallest_valid_root, with the degenerate-resultant fallback:
/// perturb theta by +-1e-7 and retry once, then per-ray bisection on the
/// membership test (result tagged used_fallback).
RayRoot solve_ray(const StabilityFunction& sf, double theta, double rho_max);

/// min over real y of F(y, rho), with the argmin; evaluated at the
/// stationary points (real roots of G). Requires a positive leading
/// y-coefficient unless F is constant in y.
std::pair<double, double> min_f_over_y(const RaySystem& rs, double rho);

/// Membership of radius rho on this ray: min_y F >= 0 and the stiff limit
/// stays contractive (skipped when q is constant).
bool ray_membership(const StabilityFunction& sf, const RaySystem& rs, double rho);

/// Definition-method radius: first membership sign change over a 1024-point
/// coarse grid on [0, rho_max], refined by bisection to width tol. Empty
/// when membership holds all the way to rho_max. Throws InteriorViolation
/// when the center itself fails membership.
std::optional<double> definition_radius(const StabilityFunction& sf, const RaySystem& rs,
                                        double rho_max, double tol);

}  // namespace imexstab
