#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "kinval/morse.hpp"
#include "test_helpers.hpp"

using namespace kinval;
using kinval::testing::l_region;

TEST_CASE("is_morse_on") {
  const PolygonalRegion sq = unit_square();
  CHECK_FALSE(static_cast<bool>(is_morse_on(MorseFunction::affine(Point(0, 1)), sq)));
  CHECK(static_cast<bool>(is_morse_on(MorseFunction::affine(Point(1, 0.3)), sq)));
  CHECK(static_cast<bool>(is_morse_on(MorseFunction::radial(Point(0.37, 0.61)), sq)));
  CHECK_THROWS_AS(euler_via_morse(MorseFunction::affine(Point(0, 1)), sq), Error);
}

TEST_CASE("critical points of affine functions") {
  const auto sq = critical_points(MorseFunction::affine(Point(1, 0.3)), unit_square());
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].location.isApprox(Point(0, 0)));
  CHECK(sq[0].sign == 1);

  const auto l = critical_points(MorseFunction::affine(Point(-1, -0.3)), l_region());
  REQUIRE(l.size() == 3);
  int total = 0;
  for (const CriticalRecord& r : l) {
    total += r.sign;
    if (r.location.isApprox(Point(1, 1))) {
      CHECK(r.sign == -1);
    } else {
      CHECK((r.location.isApprox(Point(2, 1)) || r.location.isApprox(Point(1, 2))));
      CHECK(r.sign == 1);
    }
  }
  CHECK(total == euler_combinatorial(l_region()));
}

TEST_CASE("radial functions") {
  SUBCASE("center inside: one interior minimum") {
    const auto c = critical_points(MorseFunction::radial(Point(0.5, 0.5)), unit_square());
    int total = 0;
    for (const CriticalRecord& r : c) total += r.sign;
    CHECK(total == 1);
  }
  SUBCASE("center outside: minimum at an edge foot") {
    const auto c = critical_points(MorseFunction::radial(Point(2, 0.5)), unit_square());
    REQUIRE(c.size() == 1);
    CHECK(c[0].stratum == CriticalRecord::Stratum::Edge);
    CHECK(c[0].location.isApprox(Point(1, 0.5)));
  }
  SUBCASE("critical list reproduces every sublevel jump") {
    const MorseFunction f = MorseFunction::radial(Point(0.8, 1.3));
    const PolygonalRegion l = l_region();
    for (double t = 0.05; t < 4.0; t += 0.173) {
      const auto [inner, outer] = sublevel_euler_by_clipping(f, l, t);
      CHECK(inner == outer);
      CHECK(sublevel_euler(f, l, t) == inner);
    }
  }
}

TEST_CASE("euler_via_morse") {
  const MorseFunction f = MorseFunction::affine(Point(1, 0.3));
  CHECK(euler_via_morse(f, unit_square()) == 1);
  CHECK(euler_via_morse(f, two_squares()) == 2);
  CHECK(euler_via_morse(f, holed_square()) == 0);
}

TEST_CASE("sublevel_euler") {
  const MorseFunction f = MorseFunction::affine(Point(1, 0.3));
  CHECK(sublevel_euler(f, unit_square(), 10.0) == 1);
  CHECK(sublevel_euler(f, unit_square(), -10.0) == 0);
  const MorseFunction g = MorseFunction::affine(Point(-1, -0.3));
  CHECK(sublevel_euler(g, l_region(), -1.45) == 2);
  CHECK(sublevel_euler_by_clipping(g, l_region(), -1.45).first == 2);
  CHECK_THROWS_AS(sublevel_euler(g, l_region(), -1.3), Error);
}
