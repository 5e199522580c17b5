#include "hodge/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace hodge::linalg {

CMat identity(int n) { return CMat::Identity(n, n); }

CMat adjoint(const CMat& m) { return m.adjoint(); }

CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

CMat skew_part(const CMat& m) { return 0.5 * (m - m.adjoint()); }

CMat traceless(const CMat& m) {
  const auto n = m.rows();
  return m - (m.trace() / static_cast<double>(n)) * CMat::Identity(n, n);
}

namespace {

Eigen::SelfAdjointEigenSolver<CMat> eig(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
  if (es.info() != Eigen::Success) throw NumericalError("hermitian eigen-decomposition failed");
  return es;
}

CMat spectral(const Eigen::SelfAdjointEigenSolver<CMat>& es, const Eigen::VectorXd& vals) {
  const CMat& v = es.eigenvectors();
  return v * vals.cast<cplx>().asDiagonal() * v.adjoint();
}

void require_positive(const Eigen::VectorXd& vals, const char* who) {
  if (vals.minCoeff() <= 1e-14) throw NumericalError(std::string(who) + ": eigenvalue underflow (matrix not positive definite)");
}

}  // namespace

CMat hermitian_function(const CMat& h, double (*fn)(double)) {
  auto es = eig(h);
  return spectral(es, es.eigenvalues().unaryExpr(fn));
}

CMat hermitian_sqrt(const CMat& h) {
  auto es = eig(h);
  require_positive(es.eigenvalues(), "hermitian_sqrt");
  return spectral(es, es.eigenvalues().cwiseSqrt());
}

CMat hermitian_inv_sqrt(const CMat& h) {
  auto es = eig(h);
  require_positive(es.eigenvalues(), "hermitian_inv_sqrt");
  return spectral(es, es.eigenvalues().cwiseSqrt().cwiseInverse());
}

CMat hermitian_log(const CMat& h) {
  auto es = eig(h);
  require_positive(es.eigenvalues(), "hermitian_log");
  return spectral(es, es.eigenvalues().array().log().matrix());
}

CMat hermitian_exp(const CMat& h) {
  auto es = eig(h);
  return spectral(es, es.eigenvalues().array().exp().matrix());
}

CMat hermitian_pow(const CMat& h, double t) {
  auto es = eig(h);
  require_positive(es.eigenvalues(), "hermitian_pow");
  return spectral(es, es.eigenvalues().array().pow(t).matrix());
}

Eigen::VectorXd hermitian_eigenvalues(const CMat& h) { return eig(h).eigenvalues(); }

double min_eigenvalue(const CMat& h) { return eig(h).eigenvalues().minCoeff(); }

double condition_number(const CMat& h) {
  auto vals = eig(h).eigenvalues();
  require_positive(vals, "condition_number");
  return vals.maxCoeff() / vals.minCoeff();
}

namespace {

struct NormalSchur {
  CMat basis;
  CVec eigenvalues;
};

NormalSchur normal_schur(const CMat& u) {
  Eigen::ComplexSchur<CMat> schur(u);
  if (schur.info() != Eigen::Success) throw NumericalError("complex Schur decomposition failed");
  NormalSchur out;
  out.basis = schur.matrixU();
  out.eigenvalues = schur.matrixT().diagonal();
  return out;
}

}  // namespace

CMat unitary_log(const CMat& u, double branch_tol) {
  auto s = normal_schur(u);
  CVec logs(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < logs.size(); ++i) {
    const cplx lam = s.eigenvalues(i);
    if (std::abs(lam + 1.0) < branch_tol) throw NumericalError("unitary_log: eigenvalue at -1 (holonomy outside the injectivity radius; refine the mesh)");
    logs(i) = std::log(lam);
  }
  return s.basis * logs.asDiagonal() * s.basis.adjoint();
}

CMat NormalLogDerivative::apply(const CMat& e) const {
  CMat inner = basis.adjoint() * e * basis;
  return basis * divided.cwiseProduct(inner) * basis.adjoint();
}

CMat NormalLogDerivative::apply_adjoint(const CMat& m) const {
  CMat inner = basis.adjoint() * m * basis;
  return basis * divided.conjugate().cwiseProduct(inner) * basis.adjoint();
}

NormalLogDerivative normal_log_derivative(const CMat& u) {
  auto s = normal_schur(u);
  const auto n = s.eigenvalues.size();
  NormalLogDerivative d;
  d.basis = s.basis;
  d.divided.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx a = s.eigenvalues(i);
      const cplx b = s.eigenvalues(j);
      if (std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a))) {
        // log'(x) = 1/x, second-order midpoint for near-coincident eigenvalues
        d.divided(i, j) = 2.0 / (a + b);
      } else {
        d.divided(i, j) = (std::log(a) - std::log(b)) / (a - b);
      }
    }
  }
  return d;
}

CMat polar_unitary(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMat skew_exp(const CMat& s) {
  // s = i h with h hermitian
  CMat h = (-I_unit) * skew_part(s);
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
  CVec phases = (I_unit * es.eigenvalues().cast<cplx>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double inner(const CMat& a, const CMat& b) { return (a.adjoint() * b).trace().real(); }

}  // namespace hodge::linalg
