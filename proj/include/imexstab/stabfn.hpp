#pragma once

#include "imexstab/poly.hpp"
#include "imexstab/tableau.hpp"

namespace imexstab {

/// R(z1,z2) = p(z1,z2) / q(z1) as explicit coefficient arrays.
/// q(0) = 1 and p(0,0) = 1; degrees bounded by the stage count.
struct StabilityFunction {
  BiPoly p;   // in (z1, z2)
  UniPoly q;  // in z1
  int s = 0;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleError : NumericalError {
  using NumericalError::NumericalError;
};

/// det(I - z1*A - z2*B + z1*e w^T + z2*e omega^T), by partial-pivot LU.
cplx det_p_direct(const ImexTableau& t, cplx z1, cplx z2);

/// det(I - z1*A).
cplx det_q_direct(const ImexTableau& t, cplx z1);

/// Extracts p and q coefficients by evaluation on a Chebyshev tensor grid
/// scaled to [-2, 2] and interpolation. Coefficients below 1e-12 of the
/// largest magnitude are snapped to zero. Throws NumericalError when the
/// interpolated polynomials fail to reproduce the determinants.
StabilityFunction stability_polynomials(const ImexTableau& t);

/// p(z1,z2)/q(z1). Throws PoleError when |q(z1)| < 1e-300.
cplx eval_R(const StabilityFunction& sf, cplx z1, cplx z2);

/// One step of the scheme on dU/dt = lambda1*U + lambda2*U with U^n = 1:
/// solve (I - z1*A - z2*B) U_stage = e, return 1 + (z1*w + z2*omega)^T U_stage.
/// Independent amplification-factor oracle. Throws on a singular stage system.
cplx scalar_step(const ImexTableau& t, cplx z1, cplx z2);

/// lim_{|z1|->inf} R(z1,z2). Zero when deg_z1(p) < deg(q); throws
/// NumericalError when deg(q) = 0 (R does not depend on z1).
cplx stiff_limit(const StabilityFunction& sf, cplx z2);

}  // namespace imexstab
