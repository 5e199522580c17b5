#include <doctest.h>

#include "hodge/rep.hpp"
#include "oracles.hpp"

using namespace hodge;

TEST_SUITE("rep") {
  TEST_CASE("principal embedding matches the symmetric powers written out") {
    const auto G = hyp::octagon_group();
    for (const auto& g : G.generators) {
      const CMat m = g.complex_matrix();
      CHECK(max_abs(rep::principal_embedding(3, m) - oracle::sym2(m)) < 1e-12);
      CHECK(max_abs(rep::principal_embedding(4, m) - oracle::sym3(m)) < 1e-11);
      CHECK(max_abs(rep::principal_embedding(2, m) - m) == 0.0);
    }
  }

  TEST_CASE("principal embedding is multiplicative") {
    const auto G = hyp::octagon_group();
    const CMat a = G.generators[0].complex_matrix(), b = G.generators[1].complex_matrix();
    for (int n = 2; n <= 6; ++n)
      CHECK(max_abs(rep::principal_embedding(n, a * b) - rep::principal_embedding(n, a) * rep::principal_embedding(n, b)) <
            1e-8);
    CHECK_THROWS_AS(rep::principal_embedding(3, 2.0 * a), ValidationError);
  }

  TEST_CASE("the octagon representation satisfies the relation") {
    const auto rho = rep::from_group(hyp::octagon_group());
    CHECK(rep::relation_residual_signed(rho) < 1e-12);
    CHECK(rep::relation_residual_signed(rep::compose_principal(4, rho)) < 1e-9);
    CHECK(rep::relation_residual_rep(rep::trivial(3)) == 0.0);
  }

  TEST_CASE("commutant dimension detects reducibility") {
    CHECK(rep::commutant_dimension(rep::named_representation("fuchsian", 2)) == 1);
    CHECK(rep::commutant_dimension(rep::named_representation("fuchsian", 3)) == 1);
    CHECK(rep::commutant_dimension(rep::named_representation("diagonal", 2)) == 2);
    CHECK(rep::commutant_dimension(rep::trivial(3)) == 9);
    // conjugation preserves it
    CMat g(2, 2);
    g << 1.0, 0.5, -0.2, 1.1;
    CHECK(rep::commutant_dimension(rep::conjugate(rep::named_representation("fuchsian", 2), g)) == 1);
  }

  TEST_CASE("unitarity margin separates unitary from hyperbolic data") {
    CHECK(rep::unitarity_margin(rep::named_representation("unitary", 2), 3) < 1e-12);
    CHECK(rep::unitarity_margin(rep::named_representation("fuchsian", 2), 1) > 1.0);
  }

  TEST_CASE("dimension bookkeeping") {
    const auto d = rep::moduli_dimensions(3, 2);
    CHECK(d.betti == 16);
    CHECK(d.hitchin_base == 8);
    CHECK(d.eichler_h1 == std::vector<long long>{6, 10});
    CHECK(rep::clebsch_gordon_dims(4) == std::vector<int>{3, 5, 7});
    CHECK(rep::eichler_h1(4, 3) == 28);
    CHECK_THROWS_AS(rep::moduli_dimensions(1, 2), ValidationError);
  }

  TEST_CASE("json round trip and validation") {
    const auto rho = rep::named_representation("fuchsian", 3);
    const auto back = rep::representation_from_json(rep::to_json(rho));
    REQUIRE(back.images.size() == rho.images.size());
    for (std::size_t i = 0; i < rho.images.size(); ++i) CHECK(max_abs(back.images[i] - rho.images[i]) == 0.0);
    CHECK_THROWS_AS(rep::named_representation("bogus", 2), ValidationError);
  }

  TEST_CASE("word images multiply left to right") {
    const auto rho = rep::named_representation("fuchsian", 2);
    CHECK(max_abs(rho.image(std::vector<int>{1, -2}) - rho.letter(1) * rho.letter(-2)) < 1e-14);
    CHECK(max_abs(rho.letter(-1) * rho.letter(1) - CMat::Identity(2, 2)) < 1e-13);
  }
}
