#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hodge/hyp.hpp"
#include "oracles.hpp"

using namespace hodge;

TEST_SUITE("hyp") {
  TEST_CASE("octagon generators are unimodular hyperbolic with a common trace") {
    const auto G = hyp::octagon_group();
    CHECK(G.num_generators() == 4);
    for (const auto& m : G.generators) {
      CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(m.trace() > 2.0);
      // the rotation symmetry of the regular octagon makes all side pairings conjugate
      CHECK(m.trace() == doctest::Approx(G.generators[0].trace()).epsilon(1e-12));
    }
  }

  TEST_CASE("surface relation holds") { CHECK(hyp::relation_residual(hyp::octagon_group()) < 1e-12); }

  TEST_CASE("generators pair octagon vertices") {
    const auto G = hyp::octagon_group();
    const auto V = hyp::octagon_vertices();
    REQUIRE(V.size() == 8);
    for (const auto& g : G.generators) {
      int hits = 0;
      for (cplx v : V) {
        const cplx w = hyp::mobius_apply(g, v);
        for (cplx u : V)
          if (std::abs(w - u) < 1e-10) ++hits;
      }
      CHECK(hits == 2);  // the two endpoints of the paired side
    }
  }

  TEST_CASE("octagon interior angles are pi/4") {
    const auto V = hyp::octagon_vertices();
    for (std::size_t k = 0; k < V.size(); ++k) {
      const cplx p = V[k], a = V[(k + 7) % 8], b = V[(k + 1) % 8];
      const cplx ta = hyp::geodesic_arc(p, a).velocity(0.0), tb = hyp::geodesic_arc(p, b).velocity(0.0);
      CHECK(std::abs(std::arg(ta / tb)) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-10));
    }
  }

  TEST_CASE("hyperbolic distance matches the closed form and is invariant") {
    const auto G = hyp::octagon_group();
    const cplx z{0.3, 0.7}, w{-0.4, 1.9};
    CHECK(hyp::hyp_distance(z, w) == doctest::Approx(oracle::hyperbolic_distance(z, w)).epsilon(1e-13));
    for (const auto& g : G.generators)
      CHECK(hyp::hyp_distance(hyp::mobius_apply(g, z), hyp::mobius_apply(g, w)) ==
            doctest::Approx(hyp::hyp_distance(z, w)).epsilon(1e-11));
  }

  TEST_CASE("geodesic arcs are parametrized by arc length") {
    const cplx z{0.2, 0.5}, w{-1.1, 2.3};
    const auto arc = hyp::geodesic_arc(z, w);
    CHECK(std::abs(arc.point(0.0) - z) < 1e-13);
    CHECK(std::abs(arc.point(1.0) - w) < 1e-12);
    CHECK(arc.length == doctest::Approx(oracle::hyperbolic_distance(z, w)).epsilon(1e-12));
    for (double t : {0.25, 0.5, 0.8}) {
      CHECK(hyp::hyp_distance(z, arc.point(t)) == doctest::Approx(t * arc.length).epsilon(1e-10));
      const cplx numeric = oracle::complex_derivative([&](cplx s) { return arc.point(s.real()); }, t, 1e-6);
      CHECK(std::abs(numeric - arc.velocity(t)) < 1e-6);
    }
    // vertical geodesics are a separate branch
    const auto vertical = hyp::geodesic_arc({0.5, 1.0}, {0.5, 3.0});
    CHECK(std::abs(vertical.point(0.5) - cplx(0.5, std::sqrt(3.0))) < 1e-12);
  }

  TEST_CASE("words reduce freely and invert") {
    const auto G = hyp::octagon_group();
    const auto w = hyp::make_word(G, {1, 2, -2, 3});
    CHECK(w.letters == std::vector<int>{1, 3});
    const auto id = hyp::concat(G, w, hyp::inverse(G, w));
    CHECK(id.is_identity());
    CHECK(hyp::projective_distance(w.matrix, G.letter(1) * G.letter(3)) < 1e-13);
    CHECK(hyp::letter_name(-3) == "a2^-1");
  }

  TEST_CASE("reduced word counts follow the free-group growth") {
    // 1 + 8 + 8*7 + 8*7^2 reduced words of length <= 3 on 4 generators
    CHECK(hyp::reduced_words(4, 3).size() == 1 + 8 + 56 + 392);
    CHECK_THROWS_AS(hyp::reduced_words(4, 13), ValidationError);
  }

  TEST_CASE("ball elements drop repeated group elements") {
    const auto G = hyp::octagon_group();
    const auto words = hyp::word_ball(G, 4);
    const auto elems = hyp::ball_elements(G, 4);
    CHECK(elems.size() < words.size());  // the relator of length 8 identifies words of length 4
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < std::min(elems.size(), i + 40); ++j)
        CHECK(hyp::projective_distance(elems[i], elems[j]) > 1e-8);
  }

  TEST_CASE("domain reduction lands near the center") {
    const auto G = hyp::octagon_group();
    const auto far = hyp::mobius_apply(G.letter(1) * G.letter(2) * G.letter(-3), cplx(0.1, 1.1));
    const auto red = hyp::reduce_to_domain(G, far);
    CHECK(std::abs(hyp::mobius_apply(red.gamma, far) - red.point) < 1e-10);
    CHECK(hyp::hyp_distance(red.point, I_unit) < hyp::hyp_distance(hyp::octagon_vertices()[0], I_unit) + 1e-9);
  }

  TEST_CASE("group json round trip") {
    const auto G = hyp::octagon_group();
    const auto H = hyp::group_from_json(hyp::group_to_json(G));
    REQUIRE(H.num_generators() == G.num_generators());
    for (int i = 0; i < G.num_generators(); ++i)
      CHECK(hyp::projective_distance(G.generators[static_cast<std::size_t>(i)], H.generators[static_cast<std::size_t>(i)]) == 0.0);
  }
}
