#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hodge/mesh.hpp"

using namespace hodge;

TEST_SUITE("mesh") {
  TEST_CASE("counts follow quadrisection and the Euler characteristic") {
    const auto G = hyp::octagon_group();
    for (int r = 0; r <= 2; ++r) {
      const auto m = mesh::build_equivariant_mesh(G, r);
      const std::size_t faces = 8u << (2 * r);
      CHECK(m.faces.size() == faces);
      CHECK(2 * m.edges.size() == 3 * faces);
      CHECK(m.euler_characteristic() == -2);
    }
  }

  TEST_CASE("areas add up to the Gauss-Bonnet total") {
    const auto m = mesh::build_equivariant_mesh(hyp::octagon_group(), 2);
    double hyperbolic = 0.0, normalized = 0.0;
    for (const auto& f : m.faces) {
      CHECK(f.hyperbolic_area > 0.0);
      hyperbolic += f.hyperbolic_area;
      normalized += f.area;
    }
    CHECK(hyperbolic == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-10));
    CHECK(normalized == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(m.cycle_residual < 1e-10);
  }

  TEST_CASE("face corners agree with the decorated edges") {
    const auto G = hyp::octagon_group();
    const auto m = mesh::build_equivariant_mesh(G, 1);
    for (const auto& f : m.faces)
      for (int k = 0; k < 3; ++k) {
        const auto& e = m.edges[static_cast<std::size_t>(f.edges[static_cast<std::size_t>(k)])];
        const cplx p = f.points[static_cast<std::size_t>(k)], q = f.points[static_cast<std::size_t>((k + 1) % 3)];
        const cplx a = f.signs[static_cast<std::size_t>(k)] > 0 ? p : q;
        const cplx b = f.signs[static_cast<std::size_t>(k)] > 0 ? q : p;
        // b = g·gamma·dst when a = g·src
        const auto& lift = f.lifts[static_cast<std::size_t>(f.signs[static_cast<std::size_t>(k)] > 0 ? k : (k + 1) % 3)];
        CHECK(std::abs(hyp::mobius_apply(lift.matrix, m.vertices[static_cast<std::size_t>(e.src)]) - a) < 1e-9);
        CHECK(std::abs(hyp::mobius_apply(lift.matrix * e.gamma.matrix, m.vertices[static_cast<std::size_t>(e.dst)]) - b) <
              1e-9);
      }
  }

  TEST_CASE("incidence lists every edge end") {
    const auto m = mesh::build_equivariant_mesh(hyp::octagon_group(), 1);
    std::size_t ends = 0;
    for (const auto& list : m.incidence()) ends += list.size();
    CHECK(ends == 2 * m.edges.size());
  }

  TEST_CASE("planar mesh weights are half cotangents of the hyperbolic opposite angles") {
    const std::vector<cplx> pts{{0.0, 1.0}, {1.0, 2.0}, {-0.5, 1.5}};
    // tangent at p of the geodesic towards q: perpendicular to the radius of its circle
    auto tangent = [](cplx p, cplx q) {
      const double c = (std::norm(q) - std::norm(p)) / (2.0 * (q.real() - p.real()));
      cplx t = I_unit * (p - c);
      if (std::real(std::conj(t) * (q - p)) < 0.0) t = -t;
      return t;
    };
    const auto m = mesh::planar_mesh(pts, {{{0, 1, 2}}});
    REQUIRE(m.edges.size() == 3);
    for (const auto& e : m.edges) {
      const int opposite = 3 - e.src - e.dst;
      const cplx o = pts[static_cast<std::size_t>(opposite)];
      const double angle = std::abs(std::arg(tangent(o, pts[static_cast<std::size_t>(e.src)]) /
                                             tangent(o, pts[static_cast<std::size_t>(e.dst)])));
      CHECK(e.weight == doctest::Approx(0.5 / std::tan(angle)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(mesh::planar_mesh({{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, {{{0, 1, 2}}}), ValidationError);
    CHECK_THROWS_AS(mesh::build_equivariant_mesh(hyp::octagon_group(), 7), ValidationError);
  }
}
