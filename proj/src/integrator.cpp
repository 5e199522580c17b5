#include "hodge/integrator.hpp"

#include <cmath>
#include <sstream>

namespace hodge::ode {

namespace {

// Dormand–Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*, the embedded error weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

std::string arc_text(cplx from, cplx to, double t) {
  std::ostringstream os;
  os << "arc (" << from.real() << "," << from.imag() << ") -> (" << to.real() << "," << to.imag() << ") at t=" << t;
  return os.str();
}

}  // namespace

CMat integrate_curve(const MatrixField& field, const Curve& curve, const CMat& initial, const Tolerances& tol,
                     LegStats* stats) {
  require(initial.rows() > 0 && initial.cols() > 0, "integrate_curve: empty initial state");
  const cplx from = curve.point(0.0);
  const cplx to = curve.point(1.0);
  LegStats local{from, to};
  const cplx det0 = initial.rows() == initial.cols() ? initial.determinant() : cplx{};
  if (from == to && curve.velocity(0.0) == cplx{}) {
    if (stats) *stats = local;
    return initial;
  }
  auto rhs = [&](double t, const CMat& y) -> CMat { return curve.velocity(t) * (field(curve.point(t)) * y); };

  CMat y = initial;
  double t = 0.0;
  double h = 0.05;
  CMat k1 = rhs(0.0, y);
  while (t < 1.0) {
    if (local.accepted + local.rejected >= tol.max_steps)
      throw NumericalError("integrator: step budget exhausted on " + arc_text(from, to, t));
    if (h < 1e-13) throw NumericalError("integrator: step size underflow on " + arc_text(from, to, t));
    h = std::min(h, 1.0 - t);
    const CMat k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const CMat k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const CMat k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const CMat k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const CMat k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    CMat next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const CMat k7 = rhs(t + h, next);
    const CMat err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double acc = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = tol.atol + tol.rtol * std::max(std::abs(y.data()[i]), std::abs(next.data()[i]));
      const double r = std::abs(err.data()[i]) / scale;
      acc += r * r;
    }
    const double enorm = std::sqrt(acc / static_cast<double>(y.size()));
    if (!std::isfinite(enorm)) throw NumericalError("integrator: non-finite state on " + arc_text(from, to, t));

    if (enorm <= 1.0) {
      t += h;
      y = std::move(next);
      k1 = k7;
      ++local.accepted;
      const double grow = enorm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(enorm, -0.2));
      h *= grow;
    } else {
      ++local.rejected;
      h *= std::max(0.2, 0.9 * std::pow(enorm, -0.2));
    }
  }
  if (y.rows() == y.cols() && std::abs(det0) > 0.0)
    local.wronskian_drift = std::abs(y.determinant() - det0) / std::abs(det0);
  if (stats) *stats = local;
  return y;
}

CMat integrate_segment(const MatrixField& field, cplx from, cplx to, const CMat& initial, const Tolerances& tol,
                       LegStats* stats) {
  const cplx dz = to - from;
  const Curve line{[from, dz](double t) { return from + t * dz; }, [dz](double) { return dz; }};
  return integrate_curve(field, line, initial, tol, stats);
}

CMat integrate_polyline(const MatrixField& field, const std::vector<cplx>& vertices, const CMat& initial,
                        const Tolerances& tol, std::vector<LegStats>* stats) {
  CMat y = initial;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    LegStats leg;
    y = integrate_segment(field, vertices[i], vertices[i + 1], y, tol, &leg);
    if (stats) stats->push_back(leg);
  }
  return y;
}

}  // namespace hodge::ode
