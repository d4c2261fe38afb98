#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "test_helpers.hpp"

using namespace kinval;
using kinval::testing::l_region;
using kinval::testing::vertex_distance;

TEST_CASE("rigid motions") {
  const PolygonalRegion sq = PolygonalRegion::box(0, 0, 1, 1);
  CHECK(vertex_distance(apply_motion(RigidMotion::identity(), sq), sq) == 0.0);
  const PolygonalRegion rot = apply_motion(RigidMotion::rotation_about_origin(kPi / 2), sq);
  CHECK(vertex_distance(rot, PolygonalRegion::box(-1, 0, 0, 1)) < 1e-15);
  const RigidMotion g{0.7, Point(0.3, -1.2)};
  CHECK(vertex_distance(apply_motion(g.inverse(), apply_motion(g, sq)), sq) < 1e-12);
}

TEST_CASE("region validation") {
  SUBCASE("hole with the wrong orientation names the loop") {
    try {
      PolygonalRegion::from_loops({{{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
      FAIL("expected an orientation error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidRegion);
      CHECK(std::string(e.what()).find("loop 1") != std::string::npos);
    }
  }
  SUBCASE("self-intersecting loop") {
    CHECK_THROWS_AS(PolygonalRegion::from_loops({{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}), Error);
  }
  SUBCASE("collinear vertices are merged") {
    const PolygonalRegion a = PolygonalRegion::from_loops({{{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}});
    CHECK(a.vertex_count() == 4);
  }
  SUBCASE("too few vertices") { CHECK_THROWS_AS(PolygonalRegion::from_loops({{{0, 0}, {1, 0}}}), Error); }
}

TEST_CASE("intersect_regions") {
  const PolygonalRegion sq = PolygonalRegion::box(0, 0, 1, 1);
  CHECK(vertex_distance(intersect_regions(sq, PolygonalRegion::box(0.5, -0.5, 1.5, 0.5)),
                        PolygonalRegion::box(0.5, 0, 1, 0.5)) < 1e-15);
  CHECK(intersect_regions(sq, PolygonalRegion::box(2, 2, 3, 3)).empty());
  const PolygonalRegion corner = intersect_regions(sq, PolygonalRegion::box(0.5, 0.5, 1.5, 1.5));
  CHECK(vertex_distance(corner, PolygonalRegion::box(0.5, 0.5, 1, 1)) < 1e-15);
  CHECK_THROWS_AS(intersect_regions(sq, PolygonalRegion::box(1, 0, 2, 1)), Error);

  SUBCASE("union and intersection are additive in area") {
    const PolygonalRegion b = apply_motion(RigidMotion{0.4, Point(0.6, 0.2)}, l_region());
    const double lhs = area_perimeter(union_regions(l_region(), b)).area + area_perimeter(intersect_regions(l_region(), b)).area;
    const double rhs = area_perimeter(l_region()).area + area_perimeter(b).area;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("transversality_check") {
  const PolygonalRegion sq = PolygonalRegion::box(0, 0, 1, 1);
  CHECK(static_cast<bool>(transversality_check(sq, PolygonalRegion::box(0.5, 0.25, 1.5, 0.75))));
  CHECK_FALSE(static_cast<bool>(transversality_check(sq, PolygonalRegion::box(1, 0, 2, 1))));
  const PolygonalRegion diamond = PolygonalRegion::from_loops({{{0.5, 1}, {1, 1.5}, {0.5, 2}, {0, 1.5}}});
  const TransversalityReport rep = transversality_check(sq, diamond);
  CHECK_FALSE(static_cast<bool>(rep));
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations.front().kind == TransversalityViolation::Kind::VertexOnBoundary);
}

TEST_CASE("euler_combinatorial") {
  CHECK(euler_combinatorial(unit_square()) == 1);
  CHECK(euler_combinatorial(holed_square()) == 0);
  CHECK(euler_combinatorial(two_squares()) == 2);
  CHECK(euler_combinatorial(l_region()) == 1);
  CHECK(euler_combinatorial(PointSet{{Point(0, 0), Point(1, 0), Point(3, 2)}}) == 3);
}

TEST_CASE("area_perimeter") {
  const AreaPerimeter sq = area_perimeter(PolygonalRegion::box(0, 0, 1, 1));
  CHECK(sq.area == 1.0);
  CHECK(sq.perimeter == 4.0);
  const AreaPerimeter rect = area_perimeter(PolygonalRegion::box(0, 0, 2, 1));
  CHECK(rect.area == 2.0);
  CHECK(rect.perimeter == 6.0);

  SUBCASE("L-shape against a pixel count and rectangle bookkeeping") {
    const PolygonalRegion l = l_region();
    const AreaPerimeter ap = area_perimeter(l);
    const int n = 2000;
    const double h = 2.0 / n;
    long inside = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (contains(l, Point((i + 0.5) * h, (j + 0.5) * h))) ++inside;
    CHECK(inside * h * h == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(ap.area == doctest::Approx(3.0).epsilon(1e-15));
    // Two 2x1 rectangles (perimeter 6 each) glued along the unit square (perimeter 4).
    CHECK(ap.perimeter == doctest::Approx(6.0 + 6.0 - 4.0).epsilon(1e-15));
  }
}

TEST_CASE("normal_cone_at") {
  const PolygonalRegion sq = PolygonalRegion::box(0, 0, 1, 1);
  const NormalCone c = normal_cone_at(sq, Point(0, 0));
  REQUIRE(std::holds_alternative<AngularArc>(c));
  const AngularArc arc = std::get<AngularArc>(c);
  CHECK(arc.start.angle() == doctest::Approx(kPi));
  CHECK(arc.sweep == doctest::Approx(kPi / 2));
  CHECK(arc.multiplicity == 1);
  const NormalCone e = normal_cone_at(sq, Point(0.5, 0));
  REQUIRE(std::holds_alternative<Direction>(e));
  CHECK(std::get<Direction>(e).angle() == doctest::Approx(3 * kPi / 2));

  const NormalCone r = normal_cone_at(l_region(), Point(1, 1));
  REQUIRE(std::holds_alternative<AngularArc>(r));
  CHECK(std::get<AngularArc>(r).start.angle() == doctest::Approx(0.0));
  CHECK(std::get<AngularArc>(r).sweep == doctest::Approx(kPi / 2));
  CHECK(std::get<AngularArc>(r).multiplicity == -1);
  CHECK_THROWS_AS(normal_cone_at(sq, Point(0.5, 0.5)), Error);
}

TEST_CASE("triangulate") {
  const auto sq = triangulate(PolygonalRegion::box(0, 0, 1, 1));
  REQUIRE(sq.size() == 2);
  for (const Triangle& t : sq) CHECK(t.area() == doctest::Approx(0.5));
  double total = 0.0;
  for (const Triangle& t : triangulate(l_region())) {
    CHECK(t.area() > 0.0);
    total += t.area();
  }
  CHECK(total == doctest::Approx(3.0));
  CHECK(triangulate(PolygonalRegion{}).empty());

  SUBCASE("random fixtures keep their area") {
    for (int i = 0; i < 40; ++i) {
      const PolygonalRegion a = random_region(99, i);
      double sum = 0.0;
      for (const Triangle& t : triangulate(a)) sum += t.area();
      CHECK(sum == doctest::Approx(area_perimeter(a).area).epsilon(1e-12));
    }
  }
}
