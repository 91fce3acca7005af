#pragma once

#include <string>
#include <vector>

#include "imexstab/raysolve.hpp"
#include "imexstab/stabfn.hpp"

namespace imexstab {

enum class PointStatus { Ok, Fallback, Failed };

struct BoundaryPoint {
  double theta = 0.0;
  double rho = 0.0;  // NaN when status == Failed
  PointStatus status = PointStatus::Ok;
};

/// Ordered (theta, rho) samples of the region boundary about center -1.
struct BoundaryCurve {
  std::string method;  // root | definition | continuation
  std::vector<BoundaryPoint> points;
};

/// Algebra-root tracer: smallest verified resultant root per ray on a
/// uniform theta grid. Per-ray failures are recorded, never aborting the
/// sweep; InteriorViolation aborts (the parametrization is invalid).
/// parallel=true distributes rays over OpenMP threads; results are
/// identical to the serial path.
BoundaryCurve trace_root_method(const StabilityFunction& sf, int n_samples, double rho_max,
                                bool parallel = true);

/// Definition tracer: per-ray membership bisection. Independent oracle for
/// the root method.
BoundaryCurve trace_definition_method(const StabilityFunction& sf, int n_samples,
                                      double rho_max, double tol = 1e-10,
                                      bool parallel = true);

/// Predictor-corrector continuation of {F = 0, G = 0} along theta, seeded
/// at theta = 0. Fast but not globally reliable: corrector divergence marks
/// points failed and the trace re-seeds at the next ray.
BoundaryCurve trace_continuation_method(const StabilityFunction& sf, double theta_step,
                                        double rho_max);

/// Region area by the periodic trapezoid rule on (1/2) rho^2(theta).
/// Throws NumericalError when any point is not Ok or fewer than 4 points.
double area(const BoundaryCurve& curve);

}  // namespace imexstab
