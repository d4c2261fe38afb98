#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "kinval/forms.hpp"
#include "kinval/seeding.hpp"
#include "test_helpers.hpp"

using namespace kinval;

namespace {

std::vector<ContactPoint> samples(std::uint64_t seed, int n) {
  std::vector<ContactPoint> out;
  std::uint64_t s = seed;
  for (int i = 0; i < n; ++i) out.push_back({4 * uniform01(s) - 2, 4 * uniform01(s) - 2, kTwoPi * uniform01(s)});
  return out;
}

CoefForm2 form2(std::function<Eigen::Vector3d(double, double, double)> f) { return {"test", std::move(f)}; }

}  // namespace

TEST_CASE("exterior algebra") {
  const ExtForm<double> dx = one_form(1.0, 0.0, 0.0), dy = one_form(0.0, 1.0, 0.0), dt = one_form(0.0, 0.0, 1.0);
  CHECK(wedge(wedge(dx, dy), dt)(mask::top) == 1.0);
  CHECK(wedge(wedge(dy, dx), dt)(mask::top) == -1.0);
  CHECK(wedge(dt, wedge(dx, dy))(mask::top) == 1.0);
  CHECK(wedge(dx, dx).isZero());
  // β∧ω top coefficient: r a − q b + p c.
  const ExtForm<double> top = wedge(one_form(2.0, 3.0, 5.0), two_form(7.0, 11.0, 13.0));
  CHECK(top(mask::top) == 13.0 * 2 - 11.0 * 3 + 7.0 * 5);
  Frame3<double> j = Frame3<double>::Identity();
  j(0, 0) = 2.0;
  CHECK(pullback(j, dx)(mask::dx) == 2.0);
}

TEST_CASE("eval_valuation on the unit square") {
  const PolygonalRegion sq = unit_square();
  CHECK(eval_valuation(lk0(), sq) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eval_valuation(lk1(), sq) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eval_valuation(lk2(), sq) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eval_valuation(lk0(), Shape(PointSet{{Point(0, 0), Point(5, 5)}})) == doctest::Approx(2.0));
}

TEST_CASE("curvature_measure") {
  const PolygonalRegion sq = unit_square();
  CHECK(curvature_measure(lk2(), sq, PolygonalRegion::box(-1, -1, 0.5, 2)) == doctest::Approx(0.5));
  CHECK(curvature_measure(lk1(), sq, PolygonalRegion::box(-1, -1, 0.5, 2)) == doctest::Approx(1.0));
  CHECK(curvature_measure(lk0(), sq, PolygonalRegion::box(-1, -1, 2, 2)) == doctest::Approx(1.0));
  CHECK(curvature_measure(lk0(), sq, PolygonalRegion::box(3, 3, 4, 4)) == 0.0);
  CHECK_THROWS_AS(curvature_measure(lk1(), sq, PolygonalRegion::box(0.5, 0, 2, 2)), Error);
}

TEST_CASE("point_function") {
  CHECK(point_function(lk0(), Point(0.2, -3)) == doctest::Approx(1.0));
  CHECK(point_function(lk2(), Point(0.2, -3)) == 0.0);
}

TEST_CASE("reeb decomposition residual") {
  const auto pts = samples(11, 100);
  CHECK(reeb_decomposition_check([](const ContactPoint&) { return one_form(0.0, 0.0, 1.0); }, pts) < 1e-15);
  CHECK(reeb_decomposition_check([](const ContactPoint& s) { return contact_form(s(2)); }, pts) < 1e-15);
  for (int i = 0; i < 3; ++i) {
    const ValuationPair mu = poly_trig(random_poly_trig_params(21, i));
    const FormField f = [&](const ContactPoint& s) { return mu.beta.at(s(0), s(1), s(2)); };
    CHECK(reeb_decomposition_check(f, pts) < 1e-12);
  }
}

TEST_CASE("verticality_check") {
  const auto pts = samples(12, 200);
  CHECK(verticality_check(form2([](double, double, double) { return Eigen::Vector3d(1, 0, 0); }), pts) == 0.0);
  CHECK(verticality_check(form2([](double, double, double t) { return Eigen::Vector3d(0, std::cos(t), std::sin(t)); }),
                          pts) < 1e-15);
  const double worst = verticality_check(form2([](double, double, double) { return Eigen::Vector3d(0, 1, 0); }),
                                         {{0, 0, kPi / 2}, {0, 0, 0.3}});
  CHECK(worst == doctest::Approx(1.0));
}

TEST_CASE("closedness_check") {
  const auto pts = samples(13, 100);
  CHECK(closedness_check(form2([](double, double, double) { return Eigen::Vector3d(1, 0, 0); }), pts, 1e-4) == 0.0);
  // d(x² y dy + sin x dθ) = 2xy dx∧dy + cos x dx∧dθ.
  CHECK(closedness_check(form2([](double x, double y, double) { return Eigen::Vector3d(2 * x * y, std::cos(x), 0); }),
                         pts, 1e-4) < 1e-9);
  // ω = x² dy∧dθ has dω = 2x dx∧dy∧dθ.
  const CoefForm2 w = form2([](double x, double, double) { return Eigen::Vector3d(0, 0, x * x); });
  for (const ContactPoint& p : std::vector<ContactPoint>{{0.7, 0, 0}, {-1.3, 2, 1}}) {
    CHECK(closedness_check(w, {p}, 1e-4) == doctest::Approx(std::abs(2 * p(0))).epsilon(1e-6));
  }
}

TEST_CASE("affine fields") {
  const AffineField t = AffineField::translation(Point(1, 2));
  CHECK(t.flow(0.5, Point(0, 0)).isApprox(Point(0.5, 1)));
  const AffineField d = AffineField::dilation(Point(1, 1));
  CHECK(d.flow(std::log(2.0), Point(2, 3)).isApprox(Point(3, 5)));
  const PolygonalRegion grown = flow_region(d, std::log(2.0), unit_square());
  CHECK(area_perimeter(grown).area == doctest::Approx(4.0));
}

TEST_CASE("variation of the intrinsic area") {
  // d/dt area(F_t A) = ∫_{∂A} v·n; realized by ω = dx∧dy through v⌐s*ω.
  const CoefForm2 area_form = form2([](double, double, double) { return Eigen::Vector3d(1, 0, 0); });
  const PolygonalRegion l = kinval::testing::l_region();
  const AffineField d = AffineField::dilation(Point(0.3, 0.2));
  auto area = [](const PolygonalRegion& r) { return area_perimeter(r).area; };
  const VariationResult r = variation_probe(area, l, d, area_form, 1e-3);
  CHECK(r.lhs == doctest::Approx(2 * 3.0).epsilon(1e-6));
  CHECK(r.rhs == doctest::Approx(r.lhs).epsilon(1e-5));
  CHECK(r.verticality == 0.0);
}
