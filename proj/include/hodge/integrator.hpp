#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hodge/common.hpp"

namespace hodge::ode {

struct Tolerances {
  double rtol = 1e-10;
  double atol = 1e-12;
  int max_steps = 200000;  // per leg
};

struct LegStats {
  cplx from, to;
  int accepted = 0;
  int rejected = 0;
  /// |det(Y_end) - det(Y_start)| / |det(Y_start)|; zero-trace systems conserve det.
  double wronskian_drift = 0.0;
};

/// A(z) for the linear system Y' = A(z) Y.
using MatrixField = std::function<CMat(cplx z)>;

/// A leg z(t), t in [0, 1], with its velocity dz/dt.
struct Curve {
  std::function<cplx(double)> point;
  std::function<cplx(double)> velocity;
};

/// Dormand–Prince 5(4) for dY/dt = z'(t) A(z(t)) Y along the curve.
CMat integrate_curve(const MatrixField& field, const Curve& curve, const CMat& initial, const Tolerances& tol,
                     LegStats* stats = nullptr);

/// integrate_curve along the straight segment from `from` to `to`.
CMat integrate_segment(const MatrixField& field, cplx from, cplx to, const CMat& initial, const Tolerances& tol,
                       LegStats* stats = nullptr);

/// Continues Y along consecutive polyline vertices.
CMat integrate_polyline(const MatrixField& field, const std::vector<cplx>& vertices, const CMat& initial,
                        const Tolerances& tol, std::vector<LegStats>* stats = nullptr);

}  // namespace hodge::ode
