#include "hodge/gauge.hpp"

#include <cmath>
#include <random>

#include "hodge/linalg.hpp"

namespace hodge::gauge {

using linalg::adjoint;
using linalg::commutator;

DiscreteConnection trivial_connection(const mesh::EquivariantMesh& mesh, int n) {
  return {std::vector<CMat>(mesh.edges.size(), linalg::identity(n))};
}

DiscreteHiggs zero_higgs(const mesh::EquivariantMesh& mesh, int n) {
  return {std::vector<CMat>(mesh.vertices.size(), CMat::Zero(n, n))};
}

DiscreteConnection connection_from_metric(const mesh::EquivariantMesh& mesh, const rep::Representation& rho,
                                          const harmonic::EquivariantMap& u) {
  require(u.size() == mesh.vertices.size(), "connection_from_metric: one value per vertex required");
  DiscreteConnection A;
  for (const auto& e : mesh.edges) {
    const CMat F = linalg::hermitian_inv_sqrt(u[static_cast<std::size_t>(e.src)]) * rho.image(e.gamma) *
                   linalg::hermitian_sqrt(u[static_cast<std::size_t>(e.dst)]);
    A.U.push_back(linalg::polar_unitary(F));
  }
  return A;
}

void gauge_transform(const mesh::EquivariantMesh& mesh, const std::vector<CMat>& g, DiscreteConnection& A,
                     DiscreteHiggs* Phi) {
  require(g.size() == mesh.vertices.size() && A.U.size() == mesh.edges.size(), "gauge_transform: size mismatch");
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    A.U[e] = g[static_cast<std::size_t>(mesh.edges[e].src)] * A.U[e] * adjoint(g[static_cast<std::size_t>(mesh.edges[e].dst)]);
  if (Phi)
    for (std::size_t v = 0; v < g.size(); ++v) Phi->phi[v] = g[v] * Phi->phi[v] * adjoint(g[v]);
}

CMat side_transport(const mesh::MeshFace& f, const DiscreteConnection& A, int k) {
  const auto uk = static_cast<std::size_t>(k);
  const CMat& U = A.U[static_cast<std::size_t>(f.edges[uk])];
  return f.signs[uk] > 0 ? U : CMat(U.adjoint());
}

CMat face_holonomy(const mesh::MeshFace& f, const DiscreteConnection& A) {
  return side_transport(f, A, 0) * side_transport(f, A, 1) * side_transport(f, A, 2);
}

namespace {

void check_connection(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A) {
  require(A.U.size() == mesh.edges.size(), "connection: one transport per edge required");
}

void check_higgs(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi) {
  check_connection(mesh, A);
  require(Phi.phi.size() == mesh.vertices.size(), "Higgs field: one value per vertex required");
  for (const auto& p : Phi.phi) require(std::abs(p.trace()) < 1e-10, "Higgs field must be traceless");
}

struct FaceFrame {
  CMat T0, T1, T2, H;
};

FaceFrame frame(const mesh::MeshFace& f, const DiscreteConnection& A) {
  FaceFrame fr{side_transport(f, A, 0), side_transport(f, A, 1), side_transport(f, A, 2), {}};
  fr.H = fr.T0 * fr.T1 * fr.T2;
  return fr;
}

CMat bracket_self(const CMat& p) { return commutator(p, p.adjoint()); }

// Psi on face side k, in the frame of corner k.
CMat side_psi(const mesh::MeshFace& f, const DiscreteConnection& A, const std::vector<CMat>& Psi, int k) {
  const auto uk = static_cast<std::size_t>(k);
  const auto e = static_cast<std::size_t>(f.edges[uk]);
  if (f.signs[uk] > 0) return Psi[e];
  return -A.U[e].adjoint() * Psi[e] * A.U[e];
}

}  // namespace

std::vector<CMat> face_curvature(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A) {
  check_connection(mesh, A);
  std::vector<CMat> out;
  for (const auto& f : mesh.faces) out.push_back(linalg::skew_part(linalg::unitary_log(face_holonomy(f, A))) / f.area);
  return out;
}

MomentResiduals moment_residuals(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A,
                                 const std::vector<CMat>& Psi) {
  check_connection(mesh, A);
  require(Psi.size() == mesh.edges.size(), "moment_residuals: one Psi per edge required");
  MomentResiduals r;
  const auto curvature = face_curvature(mesh, A);
  for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const auto& f = mesh.faces[fi];
    const FaceFrame fr = frame(f, A);
    const CMat T01 = fr.T0 * fr.T1;
    const std::array<CMat, 3> p{side_psi(f, A, Psi, 0), fr.T0 * side_psi(f, A, Psi, 1) * fr.T0.adjoint(),
                                T01 * side_psi(f, A, Psi, 2) * T01.adjoint()};
    CMat br = commutator(p[0], p[1]) + commutator(p[1], p[2]) + commutator(p[2], p[0]);
    r.mu1.push_back(curvature[fi] + br / (6.0 * f.area));
    r.mu2.push_back((p[0] + p[1] + p[2]) / f.area);
    r.mu1_norm += f.area * r.mu1.back().squaredNorm();
    r.mu2_norm += f.area * r.mu2.back().squaredNorm();
  }
  const auto n = A.U.empty() ? 0 : A.U.front().rows();
  r.mu3.assign(mesh.vertices.size(), CMat::Zero(n, n));
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto& edge = mesh.edges[e];
    r.mu3[static_cast<std::size_t>(edge.src)] += edge.weight * Psi[e];
    r.mu3[static_cast<std::size_t>(edge.dst)] -= edge.weight * A.U[e].adjoint() * Psi[e] * A.U[e];
  }
  for (const auto& m : r.mu3) {
    r.mu3_norm += m.squaredNorm();
    r.mu3_sup = std::max(r.mu3_sup, m.norm());
  }
  r.mu1_norm = std::sqrt(r.mu1_norm);
  r.mu2_norm = std::sqrt(r.mu2_norm);
  r.mu3_norm = std::sqrt(r.mu3_norm);
  return r;
}

namespace {

CMat face_f(const mesh::MeshFace& f, const FaceFrame& fr, const DiscreteHiggs& Phi) {
  const CMat L = linalg::unitary_log(fr.H);
  const CMat c0 = bracket_self(Phi.phi[static_cast<std::size_t>(f.corners[0])]);
  const CMat c1 = bracket_self(Phi.phi[static_cast<std::size_t>(f.corners[1])]);
  const CMat c2 = bracket_self(Phi.phi[static_cast<std::size_t>(f.corners[2])]);
  const CMat higgs = (c0 + fr.T0 * c1 * fr.T0.adjoint() + fr.T2.adjoint() * c2 * fr.T2) / 3.0;
  return linalg::hermitian_part(I_unit * L / f.area + higgs);
}

}  // namespace

YMHValue ymh_value(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi) {
  check_higgs(mesh, A, Phi);
  YMHValue out;
  for (const auto& f : mesh.faces) {
    out.f.push_back(face_f(f, frame(f, A), Phi));
    out.value += f.area * out.f.back().squaredNorm();
  }
  return out;
}

double YMHGradient::norm() const {
  double s = 0.0;
  for (const auto& m : edges) s += m.squaredNorm();
  for (const auto& m : phi) s += m.squaredNorm();
  return std::sqrt(s);
}

YMHGradient ymh_gradient(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi) {
  check_higgs(mesh, A, Phi);
  const auto n = Phi.phi.empty() ? 0 : Phi.phi.front().rows();
  YMHGradient g;
  g.edges.assign(mesh.edges.size(), CMat::Zero(n, n));
  g.phi.assign(mesh.vertices.size(), CMat::Zero(n, n));
  for (const auto& f : mesh.faces) {
    const FaceFrame fr = frame(f, A);
    const CMat F = face_f(f, fr, Phi);
    const double s = 2.0 * f.area;
    const CMat K = linalg::normal_log_derivative(fr.H).apply_adjoint((-I_unit / f.area) * F);
    const CMat c1 = bracket_self(Phi.phi[static_cast<std::size_t>(f.corners[1])]);
    const CMat c2 = bracket_self(Phi.phi[static_cast<std::size_t>(f.corners[2])]);
    const std::array<CMat, 3> T{fr.T0, fr.T1, fr.T2};
    const std::array<CMat, 3> G{
        CMat(K * (fr.T1 * fr.T2).adjoint() + (2.0 / 3.0) * F * fr.T0 * c1),
        CMat(fr.T0.adjoint() * K * fr.T2.adjoint()),
        CMat((fr.T0 * fr.T1).adjoint() * K + (2.0 / 3.0) * c2 * fr.T2 * F),
    };
    for (std::size_t k = 0; k < 3; ++k) {
      const auto e = static_cast<std::size_t>(f.edges[k]);
      if (f.signs[k] > 0)
        g.edges[e] += s * linalg::skew_part(G[k] * T[k].adjoint());
      else
        g.edges[e] -= s * linalg::skew_part(T[k].adjoint() * G[k]);
    }
    const std::array<CMat, 3> Y{CMat(F / 3.0), CMat(fr.T0.adjoint() * F * fr.T0 / 3.0),
                                CMat(fr.T2 * F * fr.T2.adjoint() / 3.0)};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto v = static_cast<std::size_t>(f.corners[k]);
      g.phi[v] += 2.0 * s * commutator(Y[k], Phi.phi[v]);
    }
  }
  for (auto& p : g.phi) p = linalg::traceless(p);
  return g;
}

void apply_step(const YMHGradient& dir, double t, DiscreteConnection& A, DiscreteHiggs& Phi) {
  for (std::size_t e = 0; e < A.U.size(); ++e) A.U[e] = linalg::polar_unitary(linalg::skew_exp(-t * dir.edges[e]) * A.U[e]);
  for (std::size_t v = 0; v < Phi.phi.size(); ++v) Phi.phi[v] = linalg::traceless(Phi.phi[v] - t * dir.phi[v]);
}

FlowStep ymh_flow_step(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi,
                       double dt) {
  require(dt > 0.0, "ymh_flow_step: dt must be positive");
  FlowStep out{A, Phi, 0.0, 0.0, 0.0, 0, false};
  out.ymh_before = ymh_value(mesh, A, Phi).value;
  out.ymh_after = out.ymh_before;
  const YMHGradient g = ymh_gradient(mesh, A, Phi);
  if (g.norm() == 0.0) return out;
  double t = dt;
  for (int h = 0; h <= kMaxHalvings; ++h, t *= 0.5) {
    DiscreteConnection A1 = A;
    DiscreteHiggs P1 = Phi;
    apply_step(g, t, A1, P1);
    const double y = ymh_value(mesh, A1, P1).value;
    if (y <= out.ymh_before) {
      out.A = std::move(A1);
      out.Phi = std::move(P1);
      out.ymh_after = y;
      out.dt = t;
      out.halvings = h;
      return out;
    }
  }
  out.stalled = true;
  out.halvings = kMaxHalvings;
  return out;
}

double holomorphicity_residual(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A,
                               const DiscreteHiggs& Phi) {
  check_higgs(mesh, A, Phi);
  double total = 0.0;
  for (const auto& f : mesh.faces) {
    const FaceFrame fr = frame(f, A);
    const std::array<CMat, 3> T{fr.T0, fr.T1, fr.T2};
    // side k transported to corner 0 by P_k
    const std::array<CMat, 3> P{linalg::identity(static_cast<int>(fr.H.rows())), fr.T0, CMat(fr.T0 * fr.T1)};
    CMat circ = CMat::Zero(fr.H.rows(), fr.H.cols());
    for (std::size_t k = 0; k < 3; ++k) {
      const CMat& a = Phi.phi[static_cast<std::size_t>(f.corners[k])];
      const CMat& b = Phi.phi[static_cast<std::size_t>(f.corners[(k + 1) % 3])];
      const CMat avg = 0.5 * (a + T[k] * b * T[k].adjoint());
      circ += P[k] * avg * P[k].adjoint() * (f.points[(k + 1) % 3] - f.points[k]);
    }
    total += f.area * (circ / f.area).squaredNorm();
  }
  return std::sqrt(total);
}

std::vector<CMat> higgs_edge_field(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A,
                                   const DiscreteHiggs& Phi) {
  check_higgs(mesh, A, Phi);
  std::vector<cplx> dz(mesh.edges.size(), cplx{});
  std::vector<bool> seen(mesh.edges.size(), false);
  for (const auto& f : mesh.faces)
    for (std::size_t k = 0; k < 3; ++k) {
      const auto e = static_cast<std::size_t>(f.edges[k]);
      if (seen[e]) continue;
      seen[e] = true;
      const cplx d = f.points[(k + 1) % 3] - f.points[k];
      dz[e] = f.signs[k] > 0 ? d : -d;
    }
  std::vector<CMat> out;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto& edge = mesh.edges[e];
    const CMat avg = 0.5 * (Phi.phi[static_cast<std::size_t>(edge.src)] +
                            A.U[e] * Phi.phi[static_cast<std::size_t>(edge.dst)] * A.U[e].adjoint());
    const CMat w = avg * dz[e];
    out.push_back(w + w.adjoint());
  }
  return out;
}

std::vector<cplx> hitchin_map_point(const CMat& Phi) {
  require(Phi.rows() == Phi.cols() && Phi.rows() >= 1, "hitchin_map_point: square matrix required");
  const auto n = Phi.rows();
  const CMat B = -Phi;
  CMat M = CMat::Zero(n, n);
  cplx c{1.0};
  std::vector<cplx> out;
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = B * M + c * CMat::Identity(n, n);
    c = -(B * M).trace() / static_cast<double>(k);
    if (k >= 2) out.push_back(c);
  }
  return out;
}

double donaldson_j(const mesh::EquivariantMesh& mesh, const std::vector<CMat>& f, double mu) {
  require(f.size() == mesh.faces.size(), "donaldson_j: one f value per face required");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto n = f[i].rows();
    const double nu = linalg::hermitian_eigenvalues(f[i] - mu * CMat::Identity(n, n)).cwiseAbs().sum();
    s += mesh.faces[i].area * nu * nu;
  }
  return std::sqrt(s);
}

double donaldson_j(const mesh::EquivariantMesh& mesh, const DiscreteConnection& A, const DiscreteHiggs& Phi,
                   double mu) {
  return donaldson_j(mesh, ymh_value(mesh, A, Phi).f, mu);
}

namespace {

CMat strict_upper(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMat N = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) N(i, j) = cplx(normal(rng), normal(rng));
  return N;
}

}  // namespace

SimpsonProbe simpson_bound_probe(int n, double eigen_bound, int trials, std::uint64_t seed) {
  require(n >= 2 && trials >= 1 && eigen_bound >= 0.0, "simpson_bound_probe: bad arguments");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(trials)), b(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    CMat P = CMat::Zero(n, n);
    const bool normal_sample = t % 10 == 0;  // extremal normal matrices on the eigenvalue bound
    for (int i = 0; i < n; ++i) {
      const double r = normal_sample ? eigen_bound : eigen_bound * std::sqrt(unit(rng));
      P(i, i) = std::polar(r, 2.0 * M_PI * unit(rng));
    }
    if (!normal_sample) P += std::pow(10.0, 6.0 * unit(rng) - 3.0) * strict_upper(n, rng);
    a[static_cast<std::size_t>(t)] = P.squaredNorm();
    b[static_cast<std::size_t>(t)] = commutator(P, P.adjoint()).squaredNorm();
  }
  auto holds = [&](double c1, double c2) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (b[i] - c1 * a[i] * a[i] + c2 * (1.0 + a[i]) < 0.0) return false;
    return true;
  };
  std::vector<double> c1_grid, c2_grid{0.0};
  for (int j = 0; j <= 64; ++j) c1_grid.push_back(std::pow(10.0, -j / 8.0));
  for (int j = -32; j <= 48; ++j) c2_grid.push_back(std::pow(10.0, j / 8.0));
  SimpsonProbe out;
  out.trials = trials;
  for (double c2 : c2_grid) {
    for (double c1 : c1_grid) {
      if (c1 <= out.C1) break;
      if (holds(c1, c2)) {
        out.C1 = c1;
        out.C2 = c2;
        break;
      }
    }
  }
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double slack = b[i] - out.C1 * a[i] * a[i] + out.C2 * (1.0 + a[i]);
    if (slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_norm = std::sqrt(a[i]);
    }
  }
  return out;
}

double nilpotent_commutator_bound(int n, int trials, std::uint64_t seed) {
  require(n >= 2 && trials >= 1, "nilpotent_commutator_bound: bad arguments");
  std::mt19937_64 rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const CMat N = strict_upper(n, rng);
    worst = std::min(worst, commutator(N, N.adjoint()).norm() / N.squaredNorm());
  }
  return worst;
}

}  // namespace hodge::gauge
