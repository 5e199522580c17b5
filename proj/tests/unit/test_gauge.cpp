#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hodge/gauge.hpp"
#include "hodge/linalg.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace {

struct Data {
  mesh::EquivariantMesh m = mesh::build_equivariant_mesh(hyp::octagon_group(), 1);
  gauge::DiscreteConnection A;
  gauge::DiscreteHiggs Phi;
};

CMat random_matrix(std::mt19937_64& rng, int n, double s) {
  std::normal_distribution<double> normal;
  CMat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = s * cplx(normal(rng), normal(rng));
  return x;
}

Data random_fields(std::uint64_t seed, int n = 2) {
  Data d;
  std::mt19937_64 rng(seed);
  for (std::size_t e = 0; e < d.m.edges.size(); ++e)
    d.A.U.push_back(linalg::skew_exp(linalg::skew_part(random_matrix(rng, n, 0.3))));
  for (std::size_t v = 0; v < d.m.vertices.size(); ++v) d.Phi.phi.push_back(linalg::traceless(random_matrix(rng, n, 0.5)));
  return d;
}

}  // namespace

TEST_SUITE("gauge") {
  TEST_CASE("gradient matches central differences") {
    const auto d = random_fields(11);
    const auto grad = gauge::ymh_gradient(d.m, d.A, d.Phi);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
      gauge::YMHGradient dir;
      double slope = 0.0;
      for (std::size_t e = 0; e < d.m.edges.size(); ++e) {
        dir.edges.push_back(linalg::skew_part(random_matrix(rng, 2, 1.0)));
        slope += linalg::inner(grad.edges[e], dir.edges.back());
      }
      for (std::size_t v = 0; v < d.m.vertices.size(); ++v) {
        dir.phi.push_back(linalg::traceless(random_matrix(rng, 2, 1.0)));
        slope += linalg::inner(grad.phi[v], dir.phi.back());
      }
      auto at = [&](double t) {
        auto A = d.A;
        auto P = d.Phi;
        gauge::apply_step(dir, -t, A, P);
        return gauge::ymh_value(d.m, A, P).value;
      };
      const double h = 1e-5;
      CHECK((at(h) - at(-h)) / (2 * h) == doctest::Approx(slope).epsilon(1e-6));
    }
  }

  TEST_CASE("functional is gauge invariant") {
    auto d = random_fields(12);
    const double before = gauge::ymh_value(d.m, d.A, d.Phi).value;
    const double j_before = gauge::donaldson_j(d.m, d.A, d.Phi);
    std::mt19937_64 rng(4);
    std::vector<CMat> g;
    for (std::size_t v = 0; v < d.m.vertices.size(); ++v) g.push_back(linalg::skew_exp(linalg::skew_part(random_matrix(rng, 2, 1.0))));
    gauge::gauge_transform(d.m, g, d.A, &d.Phi);
    CHECK(gauge::ymh_value(d.m, d.A, d.Phi).value == doctest::Approx(before).epsilon(1e-12));
    CHECK(gauge::donaldson_j(d.m, d.A, d.Phi) == doctest::Approx(j_before).epsilon(1e-12));
  }

  TEST_CASE("flow steps never increase the functional") {
    auto d = random_fields(13);
    double prev = gauge::ymh_value(d.m, d.A, d.Phi).value;
    for (int s = 0; s < 50; ++s) {
      auto st = gauge::ymh_flow_step(d.m, d.A, d.Phi, 0.05);
      CHECK(st.ymh_after <= st.ymh_before);
      CHECK(st.ymh_before == doctest::Approx(prev));
      prev = st.ymh_after;
      d.A = std::move(st.A);
      d.Phi = std::move(st.Phi);
    }
    for (const auto& U : d.A.U) CHECK(max_abs(U.adjoint() * U - CMat::Identity(2, 2)) < 1e-12);
  }

  TEST_CASE("flat connection with zero field is a zero of everything") {
    const auto m = mesh::build_equivariant_mesh(hyp::octagon_group(), 1);
    const auto A = gauge::trivial_connection(m, 3);
    const auto P = gauge::zero_higgs(m, 3);
    CHECK(gauge::ymh_value(m, A, P).value == 0.0);
    CHECK(gauge::ymh_gradient(m, A, P).norm() == 0.0);
    CHECK(gauge::donaldson_j(m, A, P) == 0.0);
    std::vector<CMat> f(m.faces.size(), 0.4 * CMat::Identity(3, 3));
    CHECK(gauge::donaldson_j(m, f, 0.4) == 0.0);
    CHECK(gauge::donaldson_j(m, f, 0.0) > 0.0);
  }

  TEST_CASE("face curvature is skew and matches the holonomy logarithm") {
    const auto d = random_fields(14);
    const auto F = gauge::face_curvature(d.m, d.A);
    for (std::size_t i = 0; i < F.size(); ++i) {
      CHECK(max_abs(F[i] + F[i].adjoint()) < 1e-12);
      const CMat H = gauge::face_holonomy(d.m.faces[i], d.A);
      CHECK(max_abs(linalg::skew_exp(F[i] * d.m.faces[i].area) - H) < 1e-10);
    }
  }

  TEST_CASE("hitchin map matches the characteristic polynomial and is conjugation invariant") {
    std::mt19937_64 rng(9);
    for (int n = 2; n <= 4; ++n) {
      const CMat phi = linalg::traceless(random_matrix(rng, n, 1.0));
      const auto c = gauge::hitchin_map_point(phi);
      const auto ref = oracle::char_coefficients(phi);
      REQUIRE(c.size() == ref.size());
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - ref[i]) < 1e-10);
      const CMat g = random_matrix(rng, n, 1.0) + 2.0 * CMat::Identity(n, n);
      const auto c2 = gauge::hitchin_map_point(g * phi * g.inverse());
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - c2[i]) < 1e-10);
    }
  }

  TEST_CASE("nilpotent commutator constant") {
    // N = a E12 gives |[N, N*]| = sqrt2 |N|^2 exactly
    CHECK(gauge::nilpotent_commutator_bound(2, 500, 1) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    for (int n = 3; n <= 4; ++n) CHECK(gauge::nilpotent_commutator_bound(n, 2000, 2) > 0.1);
  }

  TEST_CASE("simpson probe finds a positive constant") {
    const auto p = gauge::simpson_bound_probe(3, 1.0, 2000, 3);
    CHECK(p.C1 > 0.0);
    CHECK(p.worst_slack >= 0.0);
    CHECK(p.trials == 2000);
  }

  TEST_CASE("moment residuals vanish for the flat connection and zero field") {
    const auto m = mesh::build_equivariant_mesh(hyp::octagon_group(), 1);
    const auto A = gauge::trivial_connection(m, 2);
    const std::vector<CMat> Psi(m.edges.size(), CMat::Zero(2, 2));
    const auto r = gauge::moment_residuals(m, A, Psi);
    CHECK(r.mu1_norm == 0.0);
    CHECK(r.mu2_norm == 0.0);
    CHECK(r.mu3_sup == 0.0);
  }
}
