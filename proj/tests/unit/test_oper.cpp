#include <doctest.h>

#include <cmath>
#include <random>

#include "hodge/linalg.hpp"
#include "hodge/oper.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace {

oper::MonodromyOptions tight() {
  oper::MonodromyOptions o;
  o.tol.rtol = 1e-10;
  o.tol.atol = 1e-12;
  return o;
}

forms::JetProvider sample_q() {
  return forms::jet_of_rational({{0.4, {0.2, -1.3}, -2}, {{-0.3, 0.2}, {-0.5, -1.1}, -2}});
}

}  // namespace

TEST_SUITE("oper") {
  TEST_CASE("schwarzian of a Moebius map vanishes and matches the closed form elsewhere") {
    const auto m = forms::jet_of_rational({{2.0, 0.0, 0}, {-0.5, {-0.7, 0.0}, -1}});
    CHECK(std::abs(oper::schwarzian(m, {0.1, 1.3})) < 1e-13);
    const auto f = forms::exp_of(forms::JetProvider::coordinate());
    // S(exp) = -1/2
    CHECK(std::abs(oper::schwarzian(f, {0.4, 0.9}) + 0.5) < 1e-13);
    const auto d = sample_q().evaluate({0.3, 1.0}, 3);
    CHECK(std::abs(oper::schwarzian(sample_q(), {0.3, 1.0}) - oracle::schwarzian(d[1], d[2], d[3])) < 1e-12);
  }

  TEST_CASE("principal families have vanishing higher covariants") {
    const auto Q = sample_q();
    for (int n = 3; n <= 6; ++n) {
      const auto D = oper::ode_from_projective(n, Q);
      const auto c = oper::wk_covariants(D, {0.2, 0.8});
      CHECK(c.w2 == D.Q(2).value({0.2, 0.8}));
      REQUIRE(c.w3.has_value());
      CHECK(std::abs(*c.w3) < 1e-12);
      if (n >= 4) CHECK(std::abs(*c.w4) < 1e-12);
    }
  }

  TEST_CASE("a perturbed w4 constant is visible") {
    const auto D = oper::ode_from_projective(4, sample_q());
    oper::CovariantConstants k;
    k.w4_quadratic_scale = 1.01;
    CHECK(std::abs(*oper::wk_covariants(D, {0.2, 0.8}, k).w4) > 1e-6);
  }

  TEST_CASE("covariants transform with the expected weights") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    oper::OperODE D{5, {}, {}};
    for (int j = 2; j <= 5; ++j)
      D.coefficients.push_back(forms::jet_of_rational({{cplx(u(rng), u(rng)), {u(rng), -1.5}, -j}}));
    const std::vector<cplx> pts{{0.1, 1.0}, {-0.4, 0.7}, {0.5, 1.6}};
    CHECK(oper::wk_transformation_check(D, hyp::Moebius{1.2, 0.3, -0.2, (1.0 + 0.3 * -0.2) / 1.2}, pts) < 1e-8);
  }

  TEST_CASE("companion matrix has the oper shape and is traceless") {
    const auto D = oper::ode_from_projective(4, sample_q());
    const CMat A = oper::companion(D, {0.1, 1.1});
    CHECK(std::abs(A.trace()) < 1e-15);
    CHECK(A(0, 1) == cplx(1.0));
    CHECK(A(3, 0) == -D.Q(4).value({0.1, 1.1}));
  }

  TEST_CASE("integration reproduces polynomial solutions of the trivial oper") {
    const auto D = oper::ode_from_projective(3, forms::JetProvider::zero());
    const cplx z0{0.0, 1.0}, z1{0.7, 1.4};
    const CMat Y0 = oper::polynomial_basis_jets(3, z0);
    const CMat Y1 = oper::integrate_ode(D, hyp::HPath{{z0, z1}}, Y0);
    CHECK(max_abs(Y1 - oper::polynomial_basis_jets(3, z1)) < 1e-9);
  }

  TEST_CASE("trivial oper monodromy is the group up to sign") {
    const auto G = hyp::octagon_group();
    const auto m = oper::monodromy(oper::ode_from_projective(2, forms::JetProvider::zero()), G, I_unit, tight());
    for (int i = 0; i < 4; ++i) {
      const CMat img = oper::to_polynomial_basis(m.rho.images[static_cast<std::size_t>(i)], I_unit);
      const CMat g = G.generators[static_cast<std::size_t>(i)].complex_matrix();
      CHECK(std::min(max_abs(img - g), max_abs(img + g)) < 1e-6);
    }
    CHECK(m.det_defect < 1e-8);
    CHECK(m.relation_residual < 1e-5);
  }

  TEST_CASE("n = 3 trivial oper monodromy is the symmetric square") {
    const auto G = hyp::octagon_group();
    const auto m = oper::monodromy(oper::ode_from_projective(3, forms::JetProvider::zero()), G, I_unit, tight());
    for (int i = 0; i < 4; ++i) {
      const CMat img = oper::to_polynomial_basis(m.rho.images[static_cast<std::size_t>(i)], I_unit);
      const CMat s = oracle::sym2(G.generators[static_cast<std::size_t>(i)].complex_matrix());
      CHECK(std::min(max_abs(img - s), max_abs(img + s)) < 1e-6);
    }
  }

  TEST_CASE("threads do not change the monodromy") {
    const auto G = hyp::octagon_group();
    const auto D = oper::ode_from_projective(2, sample_q());
    auto o = tight();
    const auto a = oper::monodromy(D, G, {0.1, 1.0}, o);
    o.threads = 3;
    const auto b = oper::monodromy(D, G, {0.1, 1.0}, o);
    for (std::size_t i = 0; i < a.rho.images.size(); ++i) CHECK(max_abs(a.rho.images[i] - b.rho.images[i]) <= 1e-12);
  }

  TEST_CASE("poorly automorphic coefficients are flagged") {
    const auto G = hyp::octagon_group();
    const auto Q = forms::poincare_series(G, 2, forms::default_seed(2), 1);
    const auto m = oper::monodromy(oper::ode_from_projective(2, Q), G, I_unit, tight());
    CHECK_FALSE(m.warnings.empty());
    const auto good = oper::monodromy(oper::ode_from_projective(2, forms::domain_reduced(Q)), G, I_unit, tight());
    CHECK(good.warnings.empty());
  }

  TEST_CASE("zero form gives the zero cocycle exactly") {
    const auto G = hyp::octagon_group();
    const auto D = oper::ode_from_projective(3, forms::JetProvider::zero());
    forms::AutomorphicForm zero{2, G, 0, forms::JetProvider::zero(), forms::JetProvider::zero()};
    const auto c = oper::eichler_cocycle(D, zero, G, I_unit, tight());
    for (const auto& v : c.vectors) CHECK(v.isZero(0.0));
    CHECK_THROWS_AS(oper::eichler_cocycle(oper::ode_from_projective(2, forms::JetProvider::zero()), zero, G, I_unit),
                    ValidationError);
  }

  TEST_CASE("cocycle extension follows the crossed-homomorphism rule") {
    oper::EichlerCocycle c;
    c.rho = rep::trivial(3);
    c.rho.images[0] = oracle::sym2(hyp::octagon_group().generators[0].complex_matrix());
    for (int i = 0; i < 4; ++i) c.vectors.push_back(RowCVec::Constant(3, cplx(i + 1.0, -i)));
    const RowCVec v = c.extend(std::vector<int>{1, 2});
    CHECK(max_abs(v - (c.vectors[0] * c.rho.images[1] + c.vectors[1])) < 1e-14);
    const RowCVec inv = c.extend(std::vector<int>{-1});
    CHECK(max_abs(inv * c.rho.images[0] + c.vectors[0]) < 1e-12);
  }
}
