#include <cmath>

#include "doctest.h"
#include "kinval/fixtures.hpp"
#include "kinval/parallel.hpp"
#include "kinval/quadrature.hpp"

using namespace kinval;

TEST_CASE("gauss_legendre is exact for polynomials of degree 2n-1") {
  for (int n : {1, 3, 8, 16, 32}) {
    const GaussRule& g = gauss_legendre(n);
    double wsum = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      wsum += g.w[i];
      moment += g.w[i] * std::pow(g.x[i], 2 * n - 2);
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(moment == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("integrate_adaptive") {
  CHECK(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, {16, 1e-7, 1e-14, 1024}) ==
        doctest::Approx(2.0 / 3).epsilon(1e-7));
  QuadratureOptions tight{4, 1e-15, 0.0, 2};
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(50 * x); }, 0.0, 10.0, tight), Error);
}

TEST_CASE("triangle and region integration") {
  const Point a(0, 0), b(1, 0), c(0, 1);
  CHECK(integrate_triangle([](const Point& p) { return p.x() * p.y(); }, a, b, c) ==
        doctest::Approx(1.0 / 24).epsilon(1e-13));
  CHECK(integrate_region([](const Point&) { return 1.0; }, holed_square()) ==
        doctest::Approx(area_perimeter(holed_square()).area).epsilon(1e-13));
}

TEST_CASE("parallel_map preserves order and rethrows") {
  const auto v = parallel_map<double>(100, [](std::size_t i) { return static_cast<double>(i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<double>(i));
  CHECK(tree_sum(v) == 4950.0);
  CHECK_THROWS(parallel_map<int>(10, [](std::size_t i) -> int {
    if (i == 7) throw std::runtime_error("boom");
    return 0;
  }));
}
