#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "kinval/normal_cycle.hpp"
#include "test_helpers.hpp"

using namespace kinval;
using kinval::testing::l_region;

namespace {

// Test 1-forms with spatial and angular parts.
std::vector<CoefForm1> test_forms() {
  std::vector<CoefForm1> out{lk0().beta, lk1().beta};
  for (int i = 0; i < 3; ++i) out.push_back(poly_trig(random_poly_trig_params(5, i, false)).beta);
  return out;
}

}  // namespace

TEST_CASE("normal cycle of the unit square") {
  const NormalCycle n = build_normal_cycle(unit_square());
  REQUIRE(n.edges.size() == 4);
  REQUIRE(n.arcs.size() == 4);
  const double normals[] = {3 * kPi / 2, 0.0, kPi / 2, kPi};
  for (int i = 0; i < 4; ++i) {
    CHECK(n.edges[i].normal.angle() == doctest::Approx(normals[i]));
    CHECK(n.edges[i].multiplicity == 1);
    CHECK(n.arcs[i].arc.sweep == doctest::Approx(kPi / 2));
  }
  CHECK(turning(n) == doctest::Approx(kTwoPi));
  CHECK(closedness_defect(n) < 1e-12);
  CHECK(legendrian_defect(n) < 1e-12);
}

TEST_CASE("normal cycle of a point") {
  const NormalCycle n = build_normal_cycle(PointSet{{Point(0.3, 0.4)}});
  REQUIRE(n.arcs.size() == 1);
  CHECK(n.edges.empty());
  CHECK(n.arcs[0].arc.sweep == doctest::Approx(kTwoPi));
  CHECK(turning(n) == doctest::Approx(kTwoPi));
  CHECK(integrate_form(n, lk0().beta) == doctest::Approx(1.0));
}

TEST_CASE("normal cycle of the L-shape") {
  const NormalCycle n = build_normal_cycle(l_region());
  int convex = 0, reflex = 0;
  for (const ArcPiece& a : n.arcs) {
    CHECK(a.arc.sweep == doctest::Approx(kPi / 2));
    (a.arc.multiplicity > 0 ? convex : reflex)++;
    if (a.arc.multiplicity < 0) {
      CHECK(a.base.isApprox(Point(1, 1)));
      CHECK(a.arc.start.angle() == doctest::Approx(0.0));
    }
  }
  CHECK(convex == 5);
  CHECK(reflex == 1);
  CHECK(turning(n) == doctest::Approx(kTwoPi * euler_combinatorial(l_region())));
  CHECK(closedness_defect(n) < 1e-12);

  SUBCASE("reflex arc matches the additivity oracle on test forms") {
    const PolygonalRegion r1 = PolygonalRegion::box(0, 0, 2, 1);
    const PolygonalRegion r2 = PolygonalRegion::box(0, 0, 1, 2);
    const PolygonalRegion r12 = PolygonalRegion::box(0, 0, 1, 1);
    for (const CoefForm1& beta : test_forms()) {
      const double lhs = integrate_form(n, beta);
      const double rhs = integrate_form(build_normal_cycle(r1), beta) + integrate_form(build_normal_cycle(r2), beta) -
                         integrate_form(build_normal_cycle(r12), beta);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("turning number equals 2 pi chi on random fixtures") {
  for (int i = 0; i < 50; ++i) {
    const PolygonalRegion a = random_region(17, i);
    const NormalCycle n = build_normal_cycle(a);
    CHECK(turning(n) == doctest::Approx(kTwoPi * euler_combinatorial(a)).epsilon(1e-12));
    CHECK(closedness_defect(n) < 1e-9);
    CHECK(legendrian_defect(n) < 1e-9);
  }
}

TEST_CASE("act and antipodal") {
  const NormalCycle n = build_normal_cycle(unit_square());
  const NormalCycle same = act(RigidMotion::identity(), n);
  CHECK(to_text(same) == to_text(n));
  const double alpha = 0.9;
  const NormalCycle rotated = act(RigidMotion{alpha, Point(1, 2)}, n);
  for (std::size_t i = 0; i < n.edges.size(); ++i) {
    CHECK(std::abs(angle_difference(n.edges[i].normal.angle() + alpha, rotated.edges[i].normal.angle())) < 1e-12);
  }
  const NormalCycle flipped = antipodal(n);
  CHECK(flipped.edges[0].normal.angle() == doctest::Approx(kPi / 2));
}

TEST_CASE("integrate_form gives the intrinsic volumes") {
  const NormalCycle n = build_normal_cycle(unit_square());
  CHECK(integrate_form(n, lk0().beta) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_form(n, lk1().beta) == doctest::Approx(area_perimeter(unit_square()).perimeter / 2).epsilon(1e-12));
  CHECK(integrate_form(n, lk2().beta) == 0.0);
}

TEST_CASE("restrict_to_region") {
  const NormalCycle n = build_normal_cycle(unit_square());
  const NormalCycle r = restrict_to_region(n, PolygonalRegion::box(0.5, 0.5, 1.5, 1.5));
  REQUIRE(r.arcs.size() == 1);
  CHECK(r.arcs[0].base.isApprox(Point(1, 1)));
  REQUIRE(r.edges.size() == 2);
  for (const EdgePiece& e : r.edges) CHECK(e.length() == doctest::Approx(0.5));

  const NormalCycle all = restrict_to_region(n, PolygonalRegion::box(-1, -1, 2, 2));
  CHECK(to_text(all) == to_text(n));
  CHECK(restrict_to_region(n, PolygonalRegion::box(3, 3, 4, 4)).empty());
  CHECK_THROWS_AS(restrict_to_region(n, PolygonalRegion::box(1, 0, 2, 1)), Error);
}

TEST_CASE("decompose_intersection") {
  const PolygonalRegion a = unit_square();
  SUBCASE("disjoint") {
    const Decomposition d = decompose_intersection(a, PolygonalRegion::box(2, 2, 3, 3));
    CHECK(d.piece_a.empty());
    CHECK(d.piece_b.empty());
    CHECK(d.joint_arcs.empty());
  }
  SUBCASE("B contains A") {
    const Decomposition d = decompose_intersection(a, PolygonalRegion::box(-1, -1, 2, 2));
    CHECK(to_text(d.piece_a) == to_text(build_normal_cycle(a)));
    CHECK(d.piece_b.empty());
    CHECK(d.joint_arcs.empty());
  }
  SUBCASE("corner overlap") {
    const PolygonalRegion b = apply_motion(RigidMotion{0.1, Point(0.5, 0.4)}, a);
    const Decomposition d = decompose_intersection(a, b);
    CHECK(d.joint_arcs.size() == boundary_crossings(a, b).size());
    for (const ArcPiece& j : d.joint_arcs) CHECK(j.arc.sweep < kPi);
    const NormalCycle whole = build_normal_cycle(intersect_regions(a, b));
    for (const CoefForm1& beta : test_forms()) {
      CHECK(integrate_form(d, beta) == doctest::Approx(integrate_form(whole, beta)).epsilon(1e-10));
    }
  }
  SUBCASE("seeded transverse pairs") {
    for (int i = 0; i < 10; ++i) {
      const auto [p, q] = random_transverse_pair(3, i);
      const Decomposition d = decompose_intersection(p, q);
      const NormalCycle whole = build_normal_cycle(intersect_regions(p, q));
      for (const CoefForm1& beta : test_forms()) {
        const double direct = integrate_form(whole, beta);
        CHECK(std::abs(integrate_form(d, beta) - direct) <= 1e-8 * std::max(std::abs(direct), 1e-6));
      }
    }
  }
}

TEST_CASE("joint arc sign calibration") {
  CHECK(calibrate_joint_arc_sign(1) == kJointArcSign);
  CHECK(calibrate_joint_arc_sign(12345) == kJointArcSign);
}

TEST_CASE("to_text lists every piece") {
  const std::string text = to_text(build_normal_cycle(unit_square()));
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
  CHECK(text.rfind("edge 0 0 1 0", 0) == 0);
}
