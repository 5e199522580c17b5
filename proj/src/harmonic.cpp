#include "hodge/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "hodge/linalg.hpp"

namespace hodge::harmonic {

using linalg::hermitian_inv_sqrt;
using linalg::hermitian_log;
using linalg::hermitian_sqrt;

void validate_pos_hermitian(const CMat& m) {
  require(m.rows() == m.cols() && m.rows() > 0, "PosHermitian: matrix must be square");
  require(max_abs(m - m.adjoint()) <= 1e-10, "PosHermitian: matrix is not hermitian");
  if (linalg::min_eigenvalue(m) <= 1e-14) throw NumericalError("PosHermitian: eigenvalue underflow");
  require(std::abs(m.determinant() - 1.0) <= 1e-8, "PosHermitian: determinant is not 1");
}

double dist_D(const CMat& M, const CMat& N) {
  validate_pos_hermitian(M);
  validate_pos_hermitian(N);
  const CMat s = hermitian_inv_sqrt(M);
  return hermitian_log(s * N * s).norm();
}

CMat geodesic(const CMat& M, const CMat& N, double t) {
  validate_pos_hermitian(M);
  validate_pos_hermitian(N);
  if (t == 0.0) return M;
  const CMat r = hermitian_sqrt(M);
  const CMat s = hermitian_inv_sqrt(M);
  return linalg::hermitian_part(r * linalg::hermitian_pow(s * N * s, t) * r);
}

EquivariantMap constant_map(const mesh::EquivariantMesh& mesh, int n) {
  return EquivariantMap(mesh.vertices.size(), linalg::identity(n));
}

CMat twist(const rep::Representation& rho, const hyp::GroupWord& gamma, const CMat& u) {
  const CMat g = rho.image(gamma);
  return g * u * g.adjoint();
}

namespace {

// Squared distance from generalized eigenvalues of the pencil (N, M).
double dist_squared(const CMat& M, const CMat& N) {
  Eigen::GeneralizedSelfAdjointEigenSolver<CMat> es(linalg::hermitian_part(N), linalg::hermitian_part(M));
  if (es.info() != Eigen::Success) throw NumericalError("dist_D: generalized eigenproblem failed");
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 1e-14) throw NumericalError("dist_D: eigenvalue underflow");
    s += std::log(lam) * std::log(lam);
  }
  return s;
}

// rho(gamma_e) and its inverse, per edge.
struct EdgeImages {
  std::vector<CMat> fwd, inv;
  EdgeImages(const mesh::EquivariantMesh& mesh, const rep::Representation& rho) {
    for (const auto& e : mesh.edges) {
      fwd.push_back(rho.image(e.gamma));
      inv.push_back(fwd.back().inverse());
    }
  }
};

void check_sizes(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u) {
  require(u.size() == mesh.vertices.size(), "equivariant map: one value per mesh vertex required");
  for (const auto& m : u) require(m.rows() == rho.n && m.cols() == rho.n, "equivariant map: size does not match representation");
  require(static_cast<int>(rho.images.size()) == 2 * mesh.genus || mesh.edges.empty() ||
              std::all_of(mesh.edges.begin(), mesh.edges.end(), [](const auto& e) { return e.gamma.is_identity(); }),
          "representation genus does not match mesh");
}

// Twisted value at the far end of an incidence, seen from the near vertex.
CMat neighbor(const mesh::EquivariantMesh& mesh, const EdgeImages& im, const EquivariantMap& u, const mesh::Incidence& inc) {
  const auto e = static_cast<std::size_t>(inc.edge);
  if (inc.outgoing) return im.fwd[e] * u[static_cast<std::size_t>(mesh.edges[e].dst)] * im.fwd[e].adjoint();
  return im.inv[e] * u[static_cast<std::size_t>(mesh.edges[e].src)] * im.inv[e].adjoint();
}

double edge_energy(const mesh::EquivariantMesh& mesh, const EdgeImages& im, const EquivariantMap& u, std::size_t e) {
  const auto& edge = mesh.edges[e];
  const CMat N = im.fwd[e] * u[static_cast<std::size_t>(edge.dst)] * im.fwd[e].adjoint();
  return edge.weight * dist_squared(u[static_cast<std::size_t>(edge.src)], N);
}

CMat vertex_gradient(const mesh::EquivariantMesh& mesh, const EdgeImages& im, const EquivariantMap& u,
                     const std::vector<mesh::Incidence>& inc, std::size_t v) {
  const CMat s = hermitian_inv_sqrt(u[v]);
  CMat g = CMat::Zero(u[v].rows(), u[v].cols());
  for (const auto& i : inc) g += mesh.edges[static_cast<std::size_t>(i.edge)].weight * hermitian_log(s * neighbor(mesh, im, u, i) * s);
  return g;
}

double sup_gradient(const mesh::EquivariantMesh& mesh, const EdgeImages& im, const EquivariantMap& u,
                    const std::vector<std::vector<mesh::Incidence>>& inc) {
  double sup = 0.0;
  for (std::size_t v = 0; v < u.size(); ++v) sup = std::max(sup, vertex_gradient(mesh, im, u, inc[v], v).norm());
  return sup;
}

double energy_with(const mesh::EquivariantMesh& mesh, const EdgeImages& im, const EquivariantMap& u) {
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) s += edge_energy(mesh, im, u, e);
  return s;
}

CMat unit_det(const CMat& m) {
  const CMat h = linalg::hermitian_part(m);
  const double det = h.determinant().real();
  if (!(det > 0.0)) throw NumericalError("harmonic_solve: update left the positive cone");
  return h / std::pow(det, 1.0 / static_cast<double>(h.rows()));
}

}  // namespace

double discrete_energy(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u) {
  check_sizes(mesh, rho, u);
  return energy_with(mesh, EdgeImages(mesh, rho), u);
}

std::vector<CMat> karcher_gradient(const mesh::EquivariantMesh& mesh, const rep::Representation& rho,
                                   const EquivariantMap& u) {
  check_sizes(mesh, rho, u);
  const EdgeImages im(mesh, rho);
  const auto inc = mesh.incidence();
  std::vector<CMat> out;
  for (std::size_t v = 0; v < u.size(); ++v) out.push_back(vertex_gradient(mesh, im, u, inc[v], v));
  return out;
}

HarmonicResult harmonic_solve(const mesh::EquivariantMesh& mesh, const rep::Representation& rho,
                              const EquivariantMap& u0, const HarmonicOptions& opts) {
  check_sizes(mesh, rho, u0);
  require(opts.tol > 0.0 && opts.max_iters >= 0 && opts.sub_iterations >= 1, "harmonic_solve: bad options");
  for (const auto& m : u0) validate_pos_hermitian(m);
  const EdgeImages im(mesh, rho);
  const auto inc = mesh.incidence();
  // distinct edges at each vertex, for the local energy
  std::vector<std::vector<std::size_t>> local(mesh.vertices.size());
  for (std::size_t v = 0; v < inc.size(); ++v)
    for (const auto& i : inc[v])
      if (i.outgoing || mesh.edges[static_cast<std::size_t>(i.edge)].src != static_cast<int>(v))
        local[v].push_back(static_cast<std::size_t>(i.edge));
  auto local_energy = [&](const EquivariantMap& u, std::size_t v) {
    double s = 0.0;
    for (std::size_t e : local[v]) s += edge_energy(mesh, im, u, e);
    return s;
  };

  HarmonicResult res{u0, {}};
  HarmonicReport& rep = res.report;
  rep.tol = opts.tol;
  rep.divergence = opts.divergence;
  const auto base = static_cast<std::size_t>(mesh.basepoint);
  auto record = [&](double grad) {
    rep.energy_trace.push_back(energy_with(mesh, im, res.u));
    rep.grad_trace.push_back(grad);
    rep.log_cond_trace.push_back(std::log(linalg::condition_number(res.u[base])));
  };
  double grad = sup_gradient(mesh, im, res.u, inc);
  record(grad);
  while (grad >= opts.tol && rep.iterations < opts.max_iters) {
    for (std::size_t v = 0; v < res.u.size(); ++v) {
      try {
        for (int sub = 0; sub < opts.sub_iterations; ++sub) {
          const CMat X = res.u[v];
          const CMat r = hermitian_sqrt(X), s = hermitian_inv_sqrt(X);
          CMat S = CMat::Zero(X.rows(), X.cols());
          double wsum = 0.0;
          for (const auto& i : inc[v]) {
            const double w = mesh.edges[static_cast<std::size_t>(i.edge)].weight;
            S += w * hermitian_log(s * neighbor(mesh, im, res.u, i) * s);
            wsum += w;
          }
          if (wsum <= 0.0) break;
          S = linalg::traceless(linalg::hermitian_part(S / wsum));
          // contributions far below tolerance cannot change the outcome
          if (S.norm() * wsum < 1e-3 * opts.tol) break;
          // accept within floating-point resolution of the local energy
          const double e0 = local_energy(res.u, v) * (1.0 + 1e-14);
          bool accepted = false;
          for (double t = 1.0; t > 1e-9; t *= 0.5) {
            res.u[v] = unit_det(r * linalg::hermitian_exp(t * S) * r);
            if (local_energy(res.u, v) <= e0) {
              accepted = true;
              break;
            }
          }
          if (!accepted) {
            res.u[v] = X;
            break;
          }
        }
      } catch (const NumericalError& err) {
        throw NumericalError("harmonic_solve: breakdown at vertex " + std::to_string(v) + ": " + err.what());
      }
    }
    ++rep.iterations;
    grad = sup_gradient(mesh, im, res.u, inc);
    record(grad);
    const double prev = rep.energy_trace[rep.energy_trace.size() - 2];
    if (rep.energy_trace.back() > prev + 1e-12 * prev) rep.monotone = false;
    if (opts.stop_on_divergence && divergence_monitor(rep)) break;
  }
  rep.grad_norm = grad;
  rep.converged = grad < opts.tol;
  rep.diverged = divergence_monitor(rep);
  return res;
}

bool divergence_monitor(const HarmonicReport& report) {
  const int w = report.divergence.window;
  const auto& lc = report.log_cond_trace;
  const auto& g = report.grad_trace;
  if (w < 1 || static_cast<int>(lc.size()) <= w || g.size() != lc.size()) return false;
  const std::size_t end = lc.size() - 1, start = end - static_cast<std::size_t>(w);
  const double slope = (lc[end] - lc[start]) / w;
  const bool stalled = g[end] >= report.tol && g[end] >= 0.1 * g[start];
  return slope > report.divergence.slope && stalled;
}

namespace {

// -1/2 log(A^-1 B) for positive hermitian A, B.
CMat flat_psi(const CMat& A, const CMat& B) {
  const CMat r = hermitian_sqrt(A), s = hermitian_inv_sqrt(A);
  return -0.5 * s * hermitian_log(s * B * s) * r;
}

}  // namespace

PsiResult psi_field(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u) {
  check_sizes(mesh, rho, u);
  const EdgeImages im(mesh, rho);
  PsiResult out;
  double psi_energy = 0.0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto& edge = mesh.edges[e];
    const CMat s = hermitian_inv_sqrt(u[static_cast<std::size_t>(edge.src)]);
    const CMat N = im.fwd[e] * u[static_cast<std::size_t>(edge.dst)] * im.fwd[e].adjoint();
    CMat psi = -0.5 * hermitian_log(s * N * s);
    psi_energy += 4.0 * edge.weight * psi.squaredNorm();
    out.psi.edges.push_back(std::move(psi));
  }
  for (const auto& f : mesh.faces) {
    std::array<CMat, 3> lifted;
    for (std::size_t k = 0; k < 3; ++k) lifted[k] = twist(rho, f.lifts[k], u[static_cast<std::size_t>(f.corners[k])]);
    std::array<CMat, 3> sides;
    for (std::size_t k = 0; k < 3; ++k) sides[k] = flat_psi(lifted[k], lifted[(k + 1) % 3]);
    out.psi.faces.push_back(std::move(sides));
  }
  out.identity.energy = energy_with(mesh, im, u);
  out.identity.psi_energy = psi_energy;
  const double scale = std::max(std::abs(out.identity.energy), std::abs(psi_energy));
  out.identity.relative_gap = scale == 0.0 ? 0.0 : std::abs(out.identity.energy - psi_energy) / scale;
  return out;
}

CMat reversed_edge_psi(const mesh::EquivariantMesh& mesh, const rep::Representation& rho, const EquivariantMap& u,
                       int edge) {
  check_sizes(mesh, rho, u);
  require(edge >= 0 && edge < static_cast<int>(mesh.edges.size()), "reversed_edge_psi: edge out of range");
  const auto& e = mesh.edges[static_cast<std::size_t>(edge)];
  const CMat g = rho.image(e.gamma).inverse();
  const CMat s = hermitian_inv_sqrt(u[static_cast<std::size_t>(e.dst)]);
  const CMat N = g * u[static_cast<std::size_t>(e.src)] * g.adjoint();
  return -0.5 * hermitian_log(s * N * s);
}

HiggsField higgs_from_psi(const mesh::EquivariantMesh& mesh, const PsiField& psi) {
  require(psi.faces.size() == mesh.faces.size(), "higgs_from_psi: one Psi triple per face required");
  HiggsField out;
  for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const auto& f = mesh.faces[fi];
    std::array<cplx, 3> d;
    for (std::size_t k = 0; k < 3; ++k) d[k] = f.points[(k + 1) % 3] - f.points[k];
    const double cross = (std::conj(d[0]) * d[1]).imag();
    require(std::abs(cross) > 1e-12 * std::abs(d[0]) * std::abs(d[1]), "higgs_from_psi: degenerate face " + std::to_string(fi));
    double xx = 0, xy = 0, yy = 0;
    const auto n = psi.faces[fi][0].rows();
    CMat bx = CMat::Zero(n, n), by = CMat::Zero(n, n);
    for (std::size_t k = 0; k < 3; ++k) {
      const double dx = d[k].real(), dy = d[k].imag();
      xx += dx * dx;
      xy += dx * dy;
      yy += dy * dy;
      bx += dx * psi.faces[fi][k];
      by += dy * psi.faces[fi][k];
    }
    const double det = xx * yy - xy * xy;
    const CMat P = (yy * bx - xy * by) / det;
    const CMat R = (xx * by - xy * bx) / det;
    CMat phi = 0.5 * (P - I_unit * R);
    out.traceless.push_back(linalg::traceless(phi));
    out.phi.push_back(std::move(phi));
  }
  return out;
}

}  // namespace hodge::harmonic
