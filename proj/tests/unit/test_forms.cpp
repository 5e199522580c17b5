#include <doctest.h>

#include <cmath>

#include "hodge/forms.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace {

cplx rational_value(cplx z) { return 2.0 / ((z - cplx(0.3, -1.0)) * (z - cplx(0.3, -1.0))) + cplx(0.5, 1.0) / (z + cplx(0.0, 2.0)); }

forms::JetProvider rational_provider() {
  return forms::jet_of_rational({{2.0, {0.3, -1.0}, -2}, {{0.5, 1.0}, {0.0, -2.0}, -1}});
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("taylor arithmetic") {
    const Taylor x = Taylor::variable({0.5, 0.5}, 6);
    const Taylor f = (x * x + Taylor::constant(1.0, 6)).reciprocal();
    const Taylor one = f * (x * x + Taylor::constant(1.0, 6));
    CHECK(std::abs(one[0] - 1.0) < 1e-14);
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(one[k]) < 1e-13);
    // exp(log-free) check: (e^x)' = e^x
    const Taylor e = x.exp();
    const Taylor de = e.derivative();
    for (int k = 0; k < 5; ++k) CHECK(std::abs(de[k] - e[k]) < 1e-13);
    CHECK(factorial(5) == 120.0);
  }

  TEST_CASE("rational jets match closed form and finite differences") {
    const auto f = rational_provider();
    const cplx z{0.2, 0.9};
    const auto d = f.evaluate(z, 2);
    CHECK(std::abs(d[0] - rational_value(z)) < 1e-14);
    CHECK(std::abs(d[1] - oracle::complex_derivative(rational_value, z)) < 1e-8);
    const auto df = [&](cplx w) { return f.evaluate(w, 1)[1]; };
    CHECK(std::abs(d[2] - oracle::complex_derivative(df, z)) < 1e-8);
    CHECK_THROWS_AS(f.value({0.3, -1.0}), ValidationError);
  }

  TEST_CASE("composition follows the chain rule") {
    const auto f = rational_provider();
    const auto g = forms::JetProvider::coordinate() + forms::jet_of_rational({{0.1, {0.0, -1.5}, -1}});
    const auto h = forms::compose(f, g);
    const cplx z{-0.3, 1.2};
    const auto dh = h.evaluate(z, 1);
    const auto df = f.evaluate(g.value(z), 1);
    const auto dg = g.evaluate(z, 1);
    CHECK(std::abs(dh[0] - df[0]) < 1e-14);
    CHECK(std::abs(dh[1] - df[1] * dg[1]) < 1e-13);
  }

  TEST_CASE("products, sums and derivatives agree with their definitions") {
    const auto f = rational_provider();
    const auto g = forms::exp_of(forms::scale(forms::JetProvider::coordinate(), {0.0, 0.3}));
    const cplx z{0.1, 0.8};
    const auto p = (f * g).evaluate(z, 1);
    const auto fd = f.evaluate(z, 1), gd = g.evaluate(z, 1);
    CHECK(std::abs(p[1] - (fd[1] * gd[0] + fd[0] * gd[1])) < 1e-13);
    CHECK(std::abs((f + g).value(z) - (fd[0] + gd[0])) < 1e-14);
    CHECK(std::abs(forms::derivative(f, 2).value(z) - f.evaluate(z, 2)[2]) < 1e-12);
    CHECK(forms::JetProvider::zero().is_zero());
    const auto c = forms::cached(f);
    CHECK(c.value(z) == f.value(z));
  }

  TEST_CASE("poincare series equals the direct sum over the ball") {
    const auto G = hyp::octagon_group();
    const auto seed = forms::default_seed(2);
    const auto F = forms::poincare_series(G, 2, seed, 2);
    const cplx z{0.1, 1.05};
    cplx direct{};
    for (const auto& g : hyp::ball_elements(G, 2)) {
      const cplx w = (g.a * z + g.b) / (g.c * z + g.d);
      direct += std::pow(w + I_unit, -4.0) * std::pow(g.c * z + g.d, -4.0);
    }
    CHECK(std::abs(F.jets.value(z) - direct) < 1e-12 * std::abs(direct));
  }

  TEST_CASE("automorphy residual decays with the truncation radius") {
    const auto G = hyp::octagon_group();
    const auto samples = forms::default_samples(G);
    // the tail is not monotone radius by radius, but it decays overall
    const double r2 = forms::automorphy_residual(forms::poincare_series(G, 2, forms::default_seed(2), 2), samples);
    const double r5 = forms::automorphy_residual(forms::poincare_series(G, 2, forms::default_seed(2), 5), samples);
    const double r6 = forms::automorphy_residual(forms::poincare_series(G, 2, forms::default_seed(2), 6), samples);
    CHECK(r5 < r2 / 10.0);
    CHECK(r6 < r5);
  }

  TEST_CASE("domain reduction makes the truncation automorphic to rounding") {
    const auto G = hyp::octagon_group();
    const auto F = forms::domain_reduced(forms::poincare_series(G, 2, forms::default_seed(2), 3));
    CHECK(forms::automorphy_residual(F, forms::default_samples(G)) < 1e-11);
  }

  TEST_CASE("descriptors build forms and reject bad input") {
    const auto G = hyp::octagon_group();
    const auto d = forms::default_form_descriptor(3, 2);
    const auto F = forms::form_from_descriptor(d, G);
    CHECK(F.k == 3);
    CHECK(F.truncation_radius == 2);
    CHECK_THROWS_AS(forms::form_from_descriptor({{"k", 0}, {"radius", 2}}, G), ValidationError);
    const std::vector<cplx> pts{{0.0, 1.0}};
    const auto csv = forms::sample_csv(F.jets, pts, 1);
    CHECK(csv.rfind("z_re,z_im,order,value_re,value_im\n", 0) == 0);
  }
}
