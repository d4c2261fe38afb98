#include "doctest.h"
#include "kinval/errors.hpp"
#include "kinval/orientation.hpp"

using namespace kinval;

namespace {

OrientedSubspace axes(int n, std::initializer_list<int> idx, int sign = 1) {
  OrientedSubspace s{Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(idx.size()))};
  int c = 0;
  for (int i : idx) s.basis(i, c++) = 1.0;
  s.basis.col(0) *= sign;
  return s;
}

}  // namespace

TEST_CASE("orientation_sign and compare_orientation") {
  const OrientedSubspace plane = axes(3, {0, 1});
  Eigen::MatrixXd swapped(3, 2);
  swapped << 0, 1, 1, 0, 0, 0;
  CHECK(orientation_sign(plane, plane.basis) == 1);
  CHECK(orientation_sign(plane, swapped) == -1);
  CHECK(compare_orientation(plane, axes(3, {1, 0})) == -1);
  CHECK(compare_orientation(plane, axes(3, {0, 1}, -1)) == -1);
  CHECK(compare_orientation(plane, axes(3, {0, 2})) == 0);
}

TEST_CASE("oriented intersection of coordinate planes") {
  // x-axis • y-axis in R²: (v, w) = (e1, e2) is positive.
  CHECK(oriented_intersection(axes(2, {0}), axes(2, {1})).point_sign == 1);
  CHECK(oriented_intersection(axes(2, {1}), axes(2, {0})).point_sign == -1);
  const OrientedIntersection line = oriented_intersection(axes(3, {0, 1}), axes(3, {1, 2}));
  CHECK(line.space.dim() == 1);
  CHECK(std::abs(line.space.basis(1, 0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(oriented_intersection(axes(3, {0}), axes(3, {1})), Error);
}
