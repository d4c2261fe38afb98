#include "kinval/orientation.hpp"

#include <Eigen/Dense>

#include "kinval/errors.hpp"

namespace kinval {

namespace {

int sign_of(double d, double tol) { return d > tol ? 1 : (d < -tol ? -1 : 0); }

// Orthonormal basis of the orthogonal complement of span(sub) inside span(full).
Eigen::MatrixXd complement_in(const Eigen::MatrixXd& full, const Eigen::MatrixXd& sub, double tol) {
  const Eigen::Index n = full.rows();
  Eigen::MatrixXd q(n, 0);
  if (sub.cols() > 0) q = Eigen::HouseholderQR<Eigen::MatrixXd>(sub).householderQ() *
                          Eigen::MatrixXd::Identity(n, sub.cols());
  Eigen::MatrixXd out(n, 0);
  for (Eigen::Index j = 0; j < full.cols(); ++j) {
    Eigen::VectorXd v = full.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      if (q.cols() > 0) v -= q * (q.transpose() * v);
      if (out.cols() > 0) v -= out * (out.transpose() * v);
    }
    if (v.norm() > tol) {
      out.conservativeResize(n, out.cols() + 1);
      out.col(out.cols() - 1) = v.normalized();
    }
  }
  return out;
}

}  // namespace

int orientation_sign(const OrientedSubspace& s, const Eigen::MatrixXd& vectors) {
  if (vectors.cols() != s.basis.cols()) return 0;
  if (vectors.cols() == 0) return 1;
  // Coordinates of the vectors in the subspace basis.
  const Eigen::MatrixXd coords = s.basis.colPivHouseholderQr().solve(vectors);
  if ((s.basis * coords - vectors).norm() > 1e-8 * (1.0 + vectors.norm())) return 0;
  return sign_of(coords.determinant(), 1e-12);
}

int compare_orientation(const OrientedSubspace& a, const OrientedSubspace& b, double tol) {
  if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) return 0;
  const Eigen::MatrixXd coords = a.basis.colPivHouseholderQr().solve(b.basis);
  if ((a.basis * coords - b.basis).norm() > tol * (1.0 + b.basis.norm())) return 0;
  return a.dim() == 0 ? 1 : sign_of(coords.determinant(), tol);
}

OrientedIntersection oriented_intersection(const OrientedSubspace& x, const OrientedSubspace& y,
                                           double tol) {
  const int n = x.ambient_dim();
  Eigen::MatrixXd both(n, x.dim() + y.dim());
  both << x.basis, y.basis;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(both);
  lu.setThreshold(tol);
  if (lu.rank() != n) throw Error(ErrorKind::NonTransverse, "subspaces do not span the ambient space");

  // Kernel of [X | -Y] gives X∩Y as X-combinations.
  Eigen::MatrixXd stacked(n, x.dim() + y.dim());
  stacked << x.basis, -y.basis;
  Eigen::FullPivLU<Eigen::MatrixXd> klu(stacked);
  klu.setThreshold(tol);
  const Eigen::MatrixXd ker = klu.kernel();
  Eigen::MatrixXd u(n, 0);
  if (x.dim() + y.dim() - n > 0) u = x.basis * ker.topRows(x.dim());

  const Eigen::MatrixXd v = complement_in(x.basis, u, tol);
  const Eigen::MatrixXd w = complement_in(y.basis, u, tol);

  Eigen::MatrixXd vuw(n, v.cols() + u.cols() + w.cols());
  vuw << v, u, w;
  Eigen::MatrixXd vu(n, v.cols() + u.cols());
  vu << v, u;
  Eigen::MatrixXd uw(n, u.cols() + w.cols());
  uw << u, w;
  const int s = sign_of(vuw.determinant(), 1e-12) * orientation_sign(x, vu) * orientation_sign(y, uw);
  if (s == 0) throw Error(ErrorKind::NonTransverse, "degenerate intersection frame");

  OrientedIntersection out;
  if (u.cols() == 0) {
    out.space.basis = Eigen::MatrixXd(n, 0);
    out.point_sign = s;
  } else {
    if (s < 0) u.col(0) = -u.col(0);
    out.space.basis = u;
  }
  return out;
}

}  // namespace kinval
