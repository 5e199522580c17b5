#include <doctest.h>

#include <cmath>

#include "hodge/harmonic.hpp"
#include "hodge/linalg.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace {

CMat diag2(double a) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = 1.0 / a;
  return m;
}

const mesh::EquivariantMesh& coarse_mesh() {
  static const auto m = mesh::build_equivariant_mesh(hyp::octagon_group(), 1);
  return m;
}

}  // namespace

TEST_SUITE("harmonic") {
  TEST_CASE("distance in D matches the diagonal closed form") {
    CHECK(harmonic::dist_D(diag2(2.0), diag2(0.25)) == doctest::Approx(oracle::diagonal_distance({2.0, 0.5}, {0.25, 4.0})));
    // invariance under congruence by SL2
    CMat g(2, 2);
    g << 1.0, 0.4, 0.3, 1.12;
    const CMat M = g * diag2(2.0) * g.adjoint(), N = g * diag2(0.25) * g.adjoint();
    CHECK(harmonic::dist_D(M, N) == doctest::Approx(harmonic::dist_D(diag2(2.0), diag2(0.25))).epsilon(1e-12));
  }

  TEST_CASE("geodesic midpoints halve the distance") {
    CMat g(2, 2);
    g << 1.3, 0.2, 0.0, 1.0 / 1.3;
    const CMat M = g * g.adjoint(), N = diag2(3.0);
    const CMat mid = harmonic::geodesic(M, N, 0.5);
    CHECK(harmonic::dist_D(M, mid) == doctest::Approx(0.5 * harmonic::dist_D(M, N)).epsilon(1e-12));
    CHECK(harmonic::dist_D(mid, N) == doctest::Approx(0.5 * harmonic::dist_D(M, N)).epsilon(1e-12));
  }

  TEST_CASE("metric validation") {
    CHECK_NOTHROW(harmonic::validate_pos_hermitian(diag2(2.0)));
    CHECK_THROWS_AS(harmonic::validate_pos_hermitian(2.0 * diag2(2.0)), ValidationError);
    CMat bad = diag2(2.0);
    bad(0, 1) = 0.3;
    CHECK_THROWS_AS(harmonic::validate_pos_hermitian(bad), ValidationError);
  }

  TEST_CASE("energy is invariant under simultaneous conjugation") {
    const auto& m = coarse_mesh();
    const auto rho = rep::named_representation("fuchsian", 2);
    harmonic::EquivariantMap u = harmonic::constant_map(m, 2);
    for (std::size_t v = 0; v < u.size(); ++v) u[v] = diag2(1.0 + 0.1 * static_cast<double>(v % 5));
    CMat g(2, 2);
    g << 1.1, 0.3, -0.2, (1.0 + 0.3 * -0.2) / 1.1;
    harmonic::EquivariantMap w = u;
    for (auto& x : w) x = g * x * g.adjoint();
    CHECK(harmonic::discrete_energy(m, rep::conjugate(rho, g), w) ==
          doctest::Approx(harmonic::discrete_energy(m, rho, u)).epsilon(1e-10));
  }

  TEST_CASE("fuchsian data converges monotonically and satisfies the energy identity") {
    const auto& m = coarse_mesh();
    const auto rho = rep::named_representation("fuchsian", 2);
    const auto res = harmonic::harmonic_solve(m, rho, harmonic::constant_map(m, 2));
    CHECK(res.report.converged);
    CHECK(res.report.grad_norm < 1e-8);
    CHECK(res.report.monotone);
    CHECK_FALSE(res.report.diverged);
    for (std::size_t i = 1; i < res.report.energy_trace.size(); ++i)
      CHECK(res.report.energy_trace[i] <= res.report.energy_trace[i - 1] * (1.0 + 1e-12));
    const auto psi = harmonic::psi_field(m, rho, res.u);
    CHECK(psi.identity.relative_gap < 1e-12);
    for (const auto& x : res.u) CHECK_NOTHROW(harmonic::validate_pos_hermitian(x));
  }

  TEST_CASE("reversed edges carry the transported negative field") {
    const auto& m = coarse_mesh();
    const auto rho = rep::named_representation("fuchsian", 2);
    harmonic::EquivariantMap u = harmonic::constant_map(m, 2);
    for (std::size_t v = 0; v < u.size(); ++v) u[v] = diag2(1.0 + 0.05 * static_cast<double>(v));
    const auto psi = harmonic::psi_field(m, rho, u);
    for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
      // same spectrum up to sign: the reversed field is conjugate to -Psi_e
      const Eigen::VectorXd a = linalg::hermitian_eigenvalues(psi.psi.edges[static_cast<std::size_t>(e)]);
      const Eigen::VectorXd b = linalg::hermitian_eigenvalues(-harmonic::reversed_edge_psi(m, rho, u, e));
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("unitary and trivial data give the constant map") {
    const auto& m = coarse_mesh();
    const auto unitary = harmonic::harmonic_solve(m, rep::named_representation("unitary", 2), harmonic::constant_map(m, 2));
    CHECK(unitary.report.energy_trace.back() < 1e-28);
    CHECK(unitary.report.converged);
    const auto trivial = harmonic::harmonic_solve(m, rep::trivial(3), harmonic::constant_map(m, 3));
    CHECK(trivial.report.iterations == 0);
    CHECK(trivial.report.energy_trace.back() == 0.0);
  }

  TEST_CASE("non-reductive data trips the divergence monitor") {
    const auto& m = coarse_mesh();
    harmonic::HarmonicOptions o;
    o.max_iters = 2000;
    o.divergence.slope = 2e-4;
    o.stop_on_divergence = true;
    const auto res = harmonic::harmonic_solve(m, rep::named_representation("unipotent", 2), harmonic::constant_map(m, 2), o);
    CHECK(res.report.diverged);
    CHECK_FALSE(res.report.converged);
    CHECK(res.report.log_cond_trace.back() > res.report.log_cond_trace[200]);
  }

  TEST_CASE("divergence monitor needs a full window") {
    harmonic::HarmonicReport r;
    r.tol = 1e-8;
    for (int i = 0; i < 50; ++i) {
      r.log_cond_trace.push_back(0.1 * i);
      r.grad_trace.push_back(1.0);
    }
    CHECK_FALSE(harmonic::divergence_monitor(r));
    for (int i = 50; i < 300; ++i) {
      r.log_cond_trace.push_back(0.1 * i);
      r.grad_trace.push_back(1.0);
    }
    CHECK(harmonic::divergence_monitor(r));
  }

  TEST_CASE("higgs field from the fuchsian harmonic map is traceless and nonzero") {
    const auto& m = coarse_mesh();
    const auto rho = rep::named_representation("fuchsian", 2);
    const auto res = harmonic::harmonic_solve(m, rho, harmonic::constant_map(m, 2));
    const auto h = harmonic::higgs_from_psi(m, harmonic::psi_field(m, rho, res.u).psi);
    REQUIRE(h.traceless.size() == m.faces.size());
    for (const auto& p : h.traceless) CHECK(std::abs(p.trace()) < 1e-12);
    double total = 0.0;
    for (const auto& p : h.phi) total += p.norm();
    CHECK(total > 1e-3);
  }
}
