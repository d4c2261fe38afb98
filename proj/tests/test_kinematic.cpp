#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "kinval/kinematic.hpp"

using namespace kinval;

TEST_CASE("admissibility_check") {
  MotionFamily f;
  CHECK(admissibility_check(f).passed());
  MotionFamily ind;
  ind.profile = Profile::Indicator;
  const AdmissibilityReport r = admissibility_check(ind);
  CHECK_FALSE(r.smooth);
  CHECK_FALSE(r.passed());
  MotionFamily trans;
  trans.translations_only = true;
  const AdmissibilityReport t = admissibility_check(trans);
  CHECK_FALSE(t.submersive);
  CHECK(t.min_rank == 2);
}

TEST_CASE("profile") {
  MotionFamily f;
  CHECK(f.density(Point(3, 0)) == 1.0);
  CHECK(f.density(Point(6.5, 0)) == 0.0);
  const double mid = f.profile_value(5.5);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(f.profile_value(5.5) == doctest::Approx(0.5));
}

TEST_CASE("point_function_f") {
  MotionFamily f;
  const PolygonalRegion x = unit_square();
  // The plateau covers x − R_α X for every α, so f = c · 2π · area(X).
  CHECK(point_function_f(f, x, Point(0.2, 0.3)) == doctest::Approx(kTwoPi).epsilon(1e-10));
  CHECK(point_function_f(f, x, Point(100, 0)) == 0.0);

  SUBCASE("against a Monte Carlo membership oracle") {
    MotionFamily near;
    near.plateau = {1.0, 2.5, 1.0};
    const Point at(1.7, -0.4);
    const double value = point_function_f(near, x, at);
    const MonteCarloResult mc = point_function_monte_carlo(near, x, at, 1000000, 77);
    CHECK(std::abs(value - mc.mean) <= 3 * mc.stderr_);
  }
}

TEST_CASE("point function table matches direct evaluation") {
  MotionFamily near;
  near.plateau = {1.0, 2.5, 1.0};
  const PolygonalRegion x = PolygonalRegion::from_loops({{{-0.6, -0.4}, {0.6, -0.4}, {0.1, 0.7}}});
  const PointFunctionEval f(near, x);
  const double top = kTwoPi * area_perimeter(x).area;
  for (const Point& at : {Point(0.1, 0.2), Point(0.9, -0.3), Point(-1.2, 0.8), Point(0.4, 2.1), Point(2.6, 0.9)}) {
    CHECK(std::abs(f(at) - f.exact(at)) <= 1e-8 * top);
  }
  // Radial: rotating the evaluation point leaves f unchanged.
  const Point at(1.3, 0.4);
  CHECK(f.exact(rotation(1.9) * at) == doctest::Approx(f.exact(at)).epsilon(1e-9));
  CHECK(f.table_error() <= 1e-9);
}

TEST_CASE("smoothed form") {
  MotionFamily f;
  f.plateau = {1.0, 2.0, 1.0};
  const SmoothedForm omega(f, unit_square());
  CHECK(omega(50.0, 50.0, 0.3).isZero());
  const Eigen::Vector3d v = omega(0.5, 0.2, 1.1);
  CHECK(v.isApprox(omega.evaluate_uncached(0.5, 0.2, 1.1)));
  CHECK(omega.cache_size() >= 1);
}

TEST_CASE("kinematic integrals with a covering plateau") {
  MotionFamily f;
  const PolygonalRegion sq = unit_square();
  const KinematicResult r = kinematic_direct_and_unfolded(f, sq, {lk0(), lk2()}, Shape(sq));
  CHECK(r.values(0) == doctest::Approx(4 * kPi + 16).epsilon(1e-9));
  CHECK(r.values(1) == doctest::Approx(kTwoPi).epsilon(1e-9));
  CHECK(r.values(2) == doctest::Approx(r.values(0)).epsilon(1e-12));
  CHECK(r.values(3) == doctest::Approx(r.values(1)).epsilon(1e-12));

  const PolygonalRegion far = PolygonalRegion::box(20, 20, 21, 21);
  CHECK(kinematic_direct(f, far, {lk0()}, Shape(sq)).values(0) == 0.0);
}

TEST_CASE("unfolded bracket matches the direct value per motion") {
  const PolygonalRegion a = unit_square();
  const PolygonalRegion x = PolygonalRegion::box(-0.5, -0.5, 0.5, 0.5);
  for (int i = 0; i < 5; ++i) {
    const RigidMotion g{0.3 + i, Point(0.2 * i, 0.1 + 0.15 * i)};
    const PolygonalRegion gx = apply_motion(g, x);
    for (const ValuationPair& mu : {lk0(), lk1(), lk2()}) {
      const double direct = eval_valuation(mu, intersect_regions(a, gx));
      CHECK(unfolded_bracket(mu, Shape(a), gx) == doctest::Approx(direct).epsilon(1e-8));
    }
  }
}

TEST_CASE("pairing with the zero form") {
  MotionFamily f;
  f.plateau = {1.0, 2.0, 1.0};
  const PolygonalRegion x = unit_square();
  const SmoothedForm omega(f, x);
  const PairingResult p = pairing_check(f, x, omega, zero_form1(), 8);
  CHECK(p.lhs == 0.0);
  CHECK(p.rhs == 0.0);
}

TEST_CASE("kinematic Monte Carlo oracle") {
  MotionFamily f;
  const PolygonalRegion sq = unit_square();
  const MonteCarloResult mc = kinematic_chi_monte_carlo(f, sq, sq, 200000, 5);
  CHECK(std::abs(mc.mean - (4 * kPi + 16)) <= 3 * mc.stderr_);
  CHECK_THROWS_AS(kinematic_chi_monte_carlo(f, holed_square(), sq, 10, 1), Error);
}

TEST_CASE("kinematic_direct is linear in the valuation and the density") {
  MotionFamily f;
  f.plateau = {1.0, 2.0, 1.0};
  f.grid = {8, 2, 2};
  const PolygonalRegion a = unit_square();
  const PolygonalRegion x = PolygonalRegion::box(-0.4, -0.3, 0.4, 0.3);
  const ValuationPair p = poly_trig(random_poly_trig_params(8, 0));
  const ValuationPair q = poly_trig(random_poly_trig_params(8, 1));
  const ValuationPair mix = combine(0.7, p, -1.9, q);
  const Eigen::VectorXd v = kinematic_direct(f, x, {p, q, mix}, Shape(a)).values;
  CHECK(v(2) == doctest::Approx(0.7 * v(0) - 1.9 * v(1)).epsilon(1e-10));
  MotionFamily g = f;
  g.plateau.c = 2.5;
  CHECK(kinematic_direct(g, x, {p}, Shape(a)).values(0) == doctest::Approx(2.5 * v(0)).epsilon(1e-10));
}

TEST_CASE("pairing with a cut-off Euler form gives the family mass") {
  MotionFamily f;
  f.plateau = {1.0, 2.0, 1.0};
  const PolygonalRegion x = PolygonalRegion::box(-0.3, -0.3, 0.3, 0.3);
  const SmoothedForm omega(f, x);
  CoefForm1 tau = lk0().beta;
  tau.coeffs = [](double px, double py, double) {
    return Eigen::Vector3d(0, 0, smooth_cutoff(std::hypot(px, py), 4.0, 5.0) / kTwoPi);
  };
  const PairingResult r = pairing_check(f, x, omega, tau, 16);
  CHECK(r.lhs == doctest::Approx(f.mass()).epsilon(1e-4));
}
