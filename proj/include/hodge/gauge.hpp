#pragma once

#include <cstdint>
#include <vector>

#include "hodge/harmonic.hpp"
#include "hodge/mesh.hpp"

namespace hodge::gauge {

/// Per-edge unitary parallel transport, carrying the dst fiber to the src fiber.
/// The reversed edge carries U_e^*.
struct DiscreteConnection {
  std::vector<CMat> U;
};

/// Per-vertex traceless Higgs field.
struct DiscreteHiggs {
  std::vector<CMat> phi;
};

DiscreteConnection trivial_connection(const mesh::EquivariantMesh& mesh, int n);
DiscreteHiggs zero_higgs(const mesh::EquivariantMesh& mesh, int n);

/// Unitary part of u_src^-1/2 rho(gamma) u_dst^1/2 on each edge.
DiscreteConnection connection_from_metric(const mesh::EquivariantMesh& mesh, const rep::Representation& rho,
                                          const harmonic::EquivariantMap& u);

/// U_e -> g_src U_e g_dst^*, Phi_v -> g_v Phi_v g_v^*.
void gauge_transform(const mesh::EquivariantMesh& mesh, const std::vector<CMat>& g, DiscreteConnection& A,
                     DiscreteHiggs* Phi = nullptr);

/// Transport of face side k, carrying corner k+1's fiber to corner k's.
CMat side_transport(const mesh::MeshFace& f, const DiscreteConnection& A, int k);
/// Holonomy of a face based at corner 0.
CMat face_holonomy(const mesh::MeshFace& f, const DiscreteConnection& A);

/// log(holonomy)/area per face (skew-hermitian).
std::vector<CMat> face_curvature(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A);

struct MomentResiduals {
  std::vector<CMat> mu1;  // per face: F + [Psi, Psi]/2
  std::vector<CMat> mu2;  // per face: covariant circulation of Psi
  std::vector<CMat> mu3;  // per vertex: weighted covariant divergence of Psi
  double mu1_norm = 0.0;
  double mu2_norm = 0.0;
  double mu3_norm = 0.0;
  double mu3_sup = 0.0;
};

/// Psi is a per-edge hermitian field in the src frame (harmonic::PsiField::edges).
MomentResiduals moment_residuals(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A,
                                 const std::vector<CMat>& Psi);

struct YMHValue {
  double value = 0.0;
  std::vector<CMat> f;  // per face, i F + vertex-averaged [Phi, Phi^*]
};

YMHValue ymh_value(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi);

/// Gradient of ymh_value: skew-hermitian X_e for the variation U_e -> exp(X_e) U_e,
/// and traceless complex matrices for Phi, both for the real inner product Re tr(a^* b).
struct YMHGradient {
  std::vector<CMat> edges;
  std::vector<CMat> phi;
  double norm() const;
};

YMHGradient ymh_gradient(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi);

/// (A, Phi) moved by -t times the given direction, then re-unitarized.
void apply_step(const YMHGradient& dir, double t, DiscreteConnection& A, DiscreteHiggs& Phi);

struct FlowStep {
  DiscreteConnection A;
  DiscreteHiggs Phi;
  double ymh_before = 0.0;
  double ymh_after = 0.0;
  double dt = 0.0;  // step actually taken
  int halvings = 0;
  bool stalled = false;
};

inline constexpr int kMaxHalvings = 30;

FlowStep ymh_flow_step(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi,
                       double dt);

/// Discrete d''-type residual of Phi: per-face circulation of the hermitian edge
/// field Phi dz + (Phi dz)^* built from transported vertex values; weighted L2 norm.
double holomorphicity_residual(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A,
                               const DiscreteHiggs& Phi);

/// Hermitian edge field Phi dz + (Phi dz)^* in the src frame, with Phi averaged
/// over the endpoints and dz taken from a face containing the edge.
std::vector<CMat> higgs_edge_field(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A,
                                   const DiscreteHiggs& Phi);

/// Coefficients c_2..c_n of det(lambda I + Phi).
std::vector<cplx> hitchin_map_point(const CMat& Phi);

/// sqrt(sum_f area_f nu(f_f - mu I)^2), nu = sum of absolute eigenvalues.
double donaldson_j(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi,
                   double mu = 0.0);
double donaldson_j(const mesh::EquivariantMesh& mesh, const std::vector<CMat>& f, double mu = 0.0);

struct SimpsonProbe {
  double C1 = 0.0;
  double C2 = 0.0;
  double worst_slack = 0.0;  // min over samples of |[P,P*]|^2 - C1|P|^4 + C2(1+|P|^2)
  double worst_norm = 0.0;   // |P| at that sample
  int trials = 0;
};

/// Empirical constants in |[P,P*]|^2 >= C1 |P|^4 - C2 (1 + |P|^2) over random
/// n x n matrices in Schur form with eigenvalue moduli <= eigen_bound.
SimpsonProbe simpson_bound_probe(int n, double eigen_bound, int trials, std::uint64_t seed);

/// min over random strictly upper-triangular N of |[N,N*]| / |N|^2.
double nilpotent_commutator_bound(int n, int trials, std::uint64_t seed);

}  // namespace hodge::gauge
