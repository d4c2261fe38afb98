#pragma once

#include <Eigen/Core>

namespace kinval {

/// Linear subspace of R^n oriented by the order of its basis columns.
struct OrientedSubspace {
  Eigen::MatrixXd basis;  // n x dim

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// +1 if the columns of `vectors` (which span `s`) are positively oriented in
/// `s`, -1 if negatively, 0 if they do not form a basis of `s`.
int orientation_sign(const OrientedSubspace& s, const Eigen::MatrixXd& vectors);

/// Same subspace with the same orientation (+1), the opposite one (-1), or
/// different subspaces (0).
int compare_orientation(const OrientedSubspace& a, const OrientedSubspace& b, double tol = 1e-10);

/// Oriented transverse intersection X•Y: with bases v (completing X∩Y in X), u
/// (of X∩Y) and w (completing X∩Y in Y), the orientations of (v,u,w) in R^n,
/// (v,u) in X, (u,w) in Y and u in X∩Y multiply to +1. For complementary
/// dimensions the result is 0-dimensional and `point_sign` carries the
/// multiplicity. Throws NonTransverse if X + Y ≠ R^n.
struct OrientedIntersection {
  OrientedSubspace space;
  int point_sign = 1;
};
OrientedIntersection oriented_intersection(const OrientedSubspace& x, const OrientedSubspace& y,
                                           double tol = 1e-10);

}  // namespace kinval
