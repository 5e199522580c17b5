#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hodge {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RowCVec = Eigen::RowVectorXcd;

inline constexpr cplx I_unit{0.0, 1.0};

/// Bad input: violated precondition, malformed config, out-of-range parameter.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown (step-size underflow, singular matrix, log branch cut).
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// z^k by repeated squaring; k may be negative.
inline cplx ipow(cplx z, int k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  cplx r{1.0}, b = z;
  for (; k > 0; k >>= 1, b *= b)
    if (k & 1) r *= b;
  return r;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

/// Max absolute entry; the matrix norm used for all group-level identities.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace hodge
