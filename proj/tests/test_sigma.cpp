#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "kinval/sigma.hpp"

using namespace kinval;

TEST_CASE("interpolation and pushdown with zero omega") {
  const PolygonalRegion sq = unit_square();
  CHECK(interpolation_integral(build_normal_cycle(sq), lk1().beta, zero_form2()) == 0.0);
  CHECK(pushdown_integral(sq, lk1().beta, zero_form2()) == 0.0);
  CHECK(pushdown_integral(PolygonalRegion{}, lk0().beta, zero_form2()) == 0.0);
}

TEST_CASE("pushdown of a dtheta form against an area form") {
  const PolygonalRegion l = PolygonalRegion::from_loops({{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
  const CoefForm2 w{"g", [](double x, double y, double) { return Eigen::Vector3d(x * x + y, 0, 0); }};
  // ∫_L (x² + y): rectangles [0,2]x[0,1] and [0,1]x[1,2].
  const double exact = (8.0 / 3 + 1.0) + (1.0 / 3 + 1.5);
  CHECK(pushdown_integral(l, lk0().beta, w) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("forms route") {
  MotionFamily f;
  f.plateau = {3.0, 4.0, 1.0};
  const PolygonalRegion sq = unit_square();
  const SmoothedForm omega(f, sq);
  const PointFunctionEval pf(f, sq);

  SUBCASE("area valuation reduces to the f term") {
    const ThetaPsiResult t = kinematic_forms(omega, pf, lk2(), Shape(sq));
    CHECK(t.term1 == 0.0);
    CHECK(t.term2 == 0.0);
    CHECK(t.term3 == 0.0);
    CHECK(t.term4 == doctest::Approx(kTwoPi).epsilon(1e-8));
  }
  SUBCASE("singleton evaluation reproduces f") {
    const Point p(0.4, -0.7);
    const ThetaPsiResult t = kinematic_forms(omega, pf, lk0(), Shape(PointSet{{p}}));
    CHECK(std::abs(t.term1) < 1e-9);
    CHECK(t.total() == doctest::Approx(point_function_f(f, sq, p)).epsilon(1e-6));
  }
  SUBCASE("euler characteristic equals the classical value") {
    const ThetaPsiResult t = kinematic_forms(omega, pf, lk0(), Shape(sq));
    CHECK(t.total() == doctest::Approx(4 * kPi + 16).epsilon(1e-6));
  }
}

TEST_CASE("product check with E disjoint from A") {
  MotionFamily f;
  f.plateau = {1.0, 2.0, 1.0};
  f.grid = {8, 2, 2};
  const PolygonalRegion a = unit_square();
  const PolygonalRegion x = PolygonalRegion::box(-0.3, -0.3, 0.3, 0.3);
  const SmoothedForm omega(f, x);
  const PointFunctionEval pf(f, x);
  const ProductResult r = product_check(f, x, lk1(), a, PolygonalRegion::box(5, 5, 6, 6), omega, pf);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
}

TEST_CASE("sigma orientation calibration") { CHECK(calibrate_sigma_orientation(1) == kSigmaOrientation); }
