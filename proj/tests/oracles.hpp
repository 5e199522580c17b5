#pragma once

// Reference formulas written independently of the library code paths.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

/// Sym^2 in the basis x^2, xy, y^2 with (x, y) -> (a x + b y, c x + d y) per row.
inline CMat sym2(const CMat& m) {
  const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  CMat s(3, 3);
  s << a * a, 2.0 * a * b, b * b, a * c, a * d + b * c, b * d, c * c, 2.0 * c * d, d * d;
  return s;
}

/// Sym^3 in the basis x^3, x^2 y, x y^2, y^3.
inline CMat sym3(const CMat& m) {
  const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  CMat s(4, 4);
  s << a * a * a, 3.0 * a * a * b, 3.0 * a * b * b, b * b * b,                                //
      a * a * c, a * a * d + 2.0 * a * b * c, b * b * c + 2.0 * a * b * d, b * b * d,        //
      a * c * c, b * c * c + 2.0 * a * c * d, a * d * d + 2.0 * b * c * d, b * d * d,        //
      c * c * c, 3.0 * c * c * d, 3.0 * c * d * d, d * d * d;
  return s;
}

/// Coefficients e_2..e_n of det(lambda + Phi) = prod (lambda + x_i) from eigenvalues.
inline std::vector<cplx> char_coefficients(const CMat& phi) {
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<CMat>(phi).eigenvalues();
  const int n = static_cast<int>(ev.size());
  std::vector<cplx> e(static_cast<std::size_t>(n) + 1, cplx{});
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k >= 1; --k) e[static_cast<std::size_t>(k)] += ev(i) * e[static_cast<std::size_t>(k - 1)];
  return {e.begin() + 2, e.end()};
}

/// f'''/f' - 3/2 (f''/f')^2 from derivative values.
inline cplx schwarzian(cplx f1, cplx f2, cplx f3) { return f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1); }

/// arccosh(1 + |z - w|^2 / (2 Im z Im w)).
inline double hyperbolic_distance(cplx z, cplx w) {
  return std::acosh(1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag()));
}

/// Central difference of a holomorphic function along the real direction.
template <typename F>
cplx complex_derivative(F f, cplx z, double h = 1e-5) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

/// sqrt(sum log(lambda_i / mu_i)^2) for commuting positive diagonal matrices.
inline double diagonal_distance(const std::vector<double>& lambda, const std::vector<double>& mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) s += std::pow(std::log(lambda[i] / mu[i]), 2);
  return std::sqrt(s);
}

}  // namespace oracle
