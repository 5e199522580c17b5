#include <doctest.h>

#include "hodge/hn.hpp"

using namespace hodge;
using hn::Rational;

TEST_SUITE("hn") {
  TEST_CASE("oper type and filtration degrees") {
    const auto t = hn::oper_hn_type(3, 2);
    CHECK(t.to_string() == "(2,0,-2)");
    CHECK(t.rank() == 3);
    CHECK(t.total() == Rational(0));
    const auto d = hn::filtration_degrees(4, 3);
    CHECK(d.degs == std::vector<long long>{6, 8, 6, 0});
  }

  TEST_CASE("expanded and grouped forms agree") {
    const std::vector<Rational> mu{Rational(3, 2), Rational(3, 2), Rational(-1), Rational(-2)};
    const auto t = hn::HNType::from_expanded(mu);
    CHECK(t.entries.size() == 3);
    CHECK(t.expanded() == mu);
  }

  TEST_CASE("dominance order") {
    const auto a = hn::HNType::from_expanded({Rational(1), Rational(-1)});
    const auto b = hn::HNType::from_expanded({Rational(2), Rational(-2)});
    CHECK(hn::dominance_leq(a, b));
    CHECK_FALSE(hn::dominance_leq(b, a));
    CHECK(hn::dominance_leq(a, a));
  }

  TEST_CASE("rank-two admissible types are 1..g-1") {
    // (d, -d) with 0 < 2d <= 2g - 2
    for (int g = 2; g <= 3; ++g) CHECK(hn::enumerate_admissible_types(2, g).size() == static_cast<std::size_t>(g - 1));
  }

  TEST_CASE("the oper type is the unique maximum") {
    for (int n = 2; n <= 5; ++n)
      for (int g = 2; g <= 3; ++g) {
        const auto r = hn::verify_oper_maximality(n, g);
        CHECK(r.verdict());
      }
  }

  TEST_CASE("types csv header") {
    const auto csv = hn::types_csv(hn::enumerate_admissible_types(3, 2));
    CHECK(csv.rfind("index,blocks,expanded\n", 0) == 0);
  }
}
