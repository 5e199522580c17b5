#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodge/forms.hpp"
#include "hodge/hyp.hpp"
#include "hodge/integrator.hpp"
#include "hodge/rep.hpp"

namespace hodge::oper {

/// Projective connection in the upper half-plane chart: S = 2Q.
struct ProjectiveConnection {
  forms::JetProvider Q;
};

/// y^(n) + Q_2 y^(n-2) + ... + Q_n y = 0
struct OperODE {
  int n = 2;
  std::vector<forms::JetProvider> coefficients;  // Q_2 .. Q_n
  /// Automorphic inputs the coefficients were built from; their automorphy is
  /// checked at the basepoint before computing monodromy.
  std::vector<forms::AutomorphicForm> sources;

  const forms::JetProvider& Q(int j) const;
};

/// f'''/f' - (3/2)(f''/f')^2
cplx schwarzian(const forms::JetProvider& f, cplx z);
/// Schwarzian at the expansion point of a series of order >= 3.
cplx schwarzian(const Taylor& f);

/// The principal families for n = 2..6 with Q_j built from Q and its derivatives.
OperODE ode_from_projective(int n, const forms::JetProvider& Q);
OperODE ode_from_projective(int n, const forms::AutomorphicForm& Q);

struct Covariants {
  cplx w2;
  std::optional<cplx> w3;
  std::optional<cplx> w4;
};

/// Overridable constants of the covariant formulas (for mutation testing).
struct CovariantConstants {
  double w4_quadratic_scale = 1.0;
};

Covariants wk_covariants(int n, const forms::JetProvider& Q2, const forms::JetProvider& Q3,
                         const forms::JetProvider& Q4, cplx z, const CovariantConstants& k = {});
Covariants wk_covariants(const OperODE& D, cplx z, const CovariantConstants& k = {});

/// Moves the solution sheaf to w = change(z) with weight (1-q), recovers the
/// transformed coefficients, and returns max |w_k(w) (w')^k - w_k(z)|.
double wk_transformation_check(const OperODE& D, const hyp::Moebius& change, std::span<const cplx> samples);

/// Companion matrix; row j of a fundamental matrix holds y^(j).
CMat companion(const OperODE& D, cplx z);

/// Continues Y' = A(z) Y along the geodesic arcs joining consecutive path vertices.
CMat integrate_path(const ode::MatrixField& field, const hyp::HPath& path, const CMat& initial,
                    const ode::Tolerances& tol, std::vector<ode::LegStats>* stats = nullptr);

CMat integrate_ode(const OperODE& D, const hyp::HPath& path, const CMat& initial, const ode::Tolerances& tol = {},
                   std::vector<ode::LegStats>* stats = nullptr);

/// Taylor series at z of the solutions whose jets (y, ..., y^(n-1)) at z are
/// the columns of `jets`.
std::vector<Taylor> solution_series(const OperODE& D, const CMat& jets, cplx z, int order);

/// Maps jets at gamma z0 of a solution y to the jets at z0 of
/// y(gamma z) (cz+d)^{n-1}.
CMat automorphy_jet_transfer(int n, const hyp::Moebius& gamma, cplx z0);

struct MonodromyOptions {
  ode::Tolerances tol;
  double max_step = 0.5;  // hyperbolic length of path pieces
  int threads = 1;        // generators continued concurrently
};

struct MonodromyRep {
  rep::Representation rho;
  cplx z0;
  ode::Tolerances tol;
  double wronskian_drift = 0.0;  // max over legs
  double det_defect = 0.0;       // max |det - 1| over images
  double relation_residual = 0.0;
  std::vector<std::string> warnings;
};

MonodromyRep monodromy(const OperODE& D, const hyp::FuchsianGroup& G, cplx z0, const MonodromyOptions& opts = {});
/// Image of a word obtained by continuing along its own path.
CMat continue_word(const OperODE& D, const hyp::FuchsianGroup& G, const hyp::GroupWord& word, cplx z0,
                   const MonodromyOptions& opts = {}, std::vector<ode::LegStats>* stats = nullptr);

/// Columns are the jets at z0 of z^{n-1}, ..., z, 1.
CMat polynomial_basis_jets(int n, cplx z0);
/// Re-expresses a monodromy image in the basis z^{n-1}, ..., 1.
CMat to_polynomial_basis(const CMat& image, cplx z0);

struct EichlerCocycle {
  int n = 3;
  int q = 2;
  rep::Representation rho;
  std::vector<RowCVec> vectors;  // per generator
  double wronskian_drift = 0.0;

  /// Extends by v_{gamma delta} = v_gamma rho(delta) + v_delta.
  RowCVec extend(const std::vector<int>& letters) const;
  RowCVec extend(const hyp::GroupWord& w) const { return extend(w.letters); }
};

/// Requires odd n and omega of weight q = (n+1)/2.
EichlerCocycle eichler_cocycle(const OperODE& D, const forms::AutomorphicForm& omega, const hyp::FuchsianGroup& G,
                               cplx z0, const MonodromyOptions& opts = {});
/// v_gamma from one continuation of the inhomogeneous system along gamma's path.
RowCVec eichler_vector(const OperODE& D, const forms::JetProvider& omega, const hyp::FuchsianGroup& G,
                       const hyp::GroupWord& word, cplx z0, const MonodromyOptions& opts = {});

/// Componentwise differences of the covariants of D1 and D2.
std::vector<Covariants> oper_difference(const OperODE& D1, const OperODE& D2, std::span<const cplx> samples);

nlohmann::json monodromy_report(const MonodromyRep& m);

}  // namespace hodge::oper
