#pragma once

#include "hodge/common.hpp"

namespace hodge::linalg {

CMat identity(int n);
CMat adjoint(const CMat& m);
CMat commutator(const CMat& a, const CMat& b);
CMat hermitian_part(const CMat& m);
CMat skew_part(const CMat& m);
CMat traceless(const CMat& m);

/// Spectral calculus for hermitian matrices. Inputs are symmetrized first.
CMat hermitian_function(const CMat& h, double (*fn)(double));
CMat hermitian_sqrt(const CMat& h);      // positive definite input
CMat hermitian_inv_sqrt(const CMat& h);  // positive definite input
CMat hermitian_log(const CMat& h);       // positive definite input
CMat hermitian_exp(const CMat& h);
CMat hermitian_pow(const CMat& h, double t);
Eigen::VectorXd hermitian_eigenvalues(const CMat& h);

/// Smallest eigenvalue of a hermitian matrix.
double min_eigenvalue(const CMat& h);
/// Ratio of extreme eigenvalues of a positive hermitian matrix.
double condition_number(const CMat& h);

/// Principal logarithm of a unitary matrix via complex Schur form.
/// Throws NumericalError when an eigenvalue sits within `branch_tol` of -1.
CMat unitary_log(const CMat& u, double branch_tol = 1e-8);

/// Fréchet derivative of the principal log at a normal matrix, and its adjoint
/// with respect to the real inner product Re tr(A^* B).
struct NormalLogDerivative {
  CMat basis;          // unitary Schur basis
  CMat divided;        // first divided differences of log on the spectrum
  CMat apply(const CMat& e) const;
  CMat apply_adjoint(const CMat& m) const;
};
NormalLogDerivative normal_log_derivative(const CMat& u);

/// Unitary factor of the left polar decomposition m = P U (P positive).
CMat polar_unitary(const CMat& m);

/// Exponential of a skew-hermitian matrix (unitary result).
CMat skew_exp(const CMat& s);

/// Real Frobenius inner product Re tr(a^* b).
double inner(const CMat& a, const CMat& b);

}  // namespace hodge::linalg
