#pragma once

#include <vector>

#include "hodge/mesh.hpp"
#include "hodge/rep.hpp"

namespace hodge::harmonic {

/// Throws ValidationError unless m is hermitian (1e-10), positive and has det 1 (1e-8).
void validate_pos_hermitian(const CMat& m);

/// Geodesic distance in D: ||log(M^-1/2 N M^-1/2)||_F.
double dist_D(const CMat& M, const CMat& N);
/// M^1/2 (M^-1/2 N M^-1/2)^t M^1/2.
CMat geodesic(const CMat& M, const CMat& N, double t);

using EquivariantMap = std::vector<CMat>;

EquivariantMap constant_map(const mesh::EquivariantMesh& mesh, int n);

/// Value of the lifted map at gamma·x given u at x: rho(gamma) u rho(gamma)^*.
CMat twist(const rep::Representation& rho, const hyp::GroupWord& gamma, const CMat& u);

/// Sum over edges of w_e dist_D(u_src, twist_e(u_dst))^2, via generalized eigenvalues.
double discrete_energy(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u);

/// Per-vertex Karcher gradient sum_i w_i log(u^-1/2 N_i u^-1/2) over twisted neighbors N_i.
std::vector<CMat> karcher_gradient(const mesh::EquivariantMesh& mesh, const rep::Representation& rho,
                                   const EquivariantMap& u);

struct DivergenceConfig {
  int window = 200;
  double slope = 0.01;  // growth of log cond(u(basepoint)) per sweep
};

struct HarmonicReport {
  std::vector<double> energy_trace;    // entry 0 is the initial energy
  std::vector<double> grad_trace;      // sup-norm Karcher gradient, same indexing
  std::vector<double> log_cond_trace;  // log condition number of u at the basepoint
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
  bool diverged = false;
  bool monotone = true;
  double tol = 0.0;
  DivergenceConfig divergence;
};

struct HarmonicOptions {
  double tol = 1e-8;
  int max_iters = 5000;
  int sub_iterations = 5;
  DivergenceConfig divergence;
  /// Stop as soon as the divergence monitor fires.
  bool stop_on_divergence = false;
};

struct HarmonicResult {
  EquivariantMap u;
  HarmonicReport report;
};

HarmonicResult harmonic_solve(const mesh::EquivariantMesh& mesh, const rep::Representation& rho,
                              const EquivariantMap& u0, const HarmonicOptions& opts = {});

/// True when log cond(u(basepoint)) grew faster than the configured slope over
/// the trailing window while the gradient stayed above tolerance.
bool divergence_monitor(const HarmonicReport& report);

struct PsiField {
  /// Per edge, -1/2 log(u_src^-1/2 twist(u_dst) u_src^-1/2) in the symmetric frame at src.
  std::vector<CMat> edges;
  /// Per face, the three values -1/2 log(u_k^-1 u_{k+1}) of the lifted map along the
  /// face's sides, in the flat frame of the face's lift.
  std::vector<std::array<CMat, 3>> faces;
};

struct PsiIdentityReport {
  double energy = 0.0;       // discrete_energy
  double psi_energy = 0.0;   // 4 sum_e w_e ||Psi_e||^2
  double relative_gap = 0.0;
};

struct PsiResult {
  PsiField psi;
  PsiIdentityReport identity;
};

PsiResult psi_field(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u);

/// Psi of the reversed edge, computed directly from the reversed data.
CMat reversed_edge_psi(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u,
                       int edge);

struct HiggsField {
  std::vector<CMat> phi;        // (1,0) part of the fitted constant 1-form per face
  std::vector<CMat> traceless;  // its traceless part
};

HiggsField higgs_from_psi(const mesh::EquivariantMesh& mesh, const PsiField& psi);

}  // namespace hodge::harmonic
