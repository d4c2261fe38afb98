#pragma once

#include <Eigen/Core>
#include <bit>

namespace kinval {

// Exterior algebra of the 3-dimensional space with coordinates (x, y, θ).
// Basis monomials are indexed by bit masks: dx = 1, dy = 2, dθ = 4, each
// monomial written with increasing index.
template <typename Scalar>
using ExtForm = Eigen::Matrix<Scalar, 8, 1>;

template <typename Scalar>
using Frame3 = Eigen::Matrix<Scalar, 3, 3>;

namespace mask {
inline constexpr int dx = 1, dy = 2, dtheta = 4;
inline constexpr int dxdy = 3, dxdtheta = 5, dydtheta = 6, top = 7;
}  // namespace mask

inline int degree(int m) { return std::popcount(static_cast<unsigned>(m)); }

/// Sign of moving the monomial j past i into increasing order.
inline int merge_sign(int i, int j) {
  int swaps = 0;
  for (int p = 0; p < 3; ++p)
    if (i & (1 << p)) swaps += std::popcount(static_cast<unsigned>(j & ((1 << p) - 1)));
  return swaps % 2 == 0 ? 1 : -1;
}

template <typename Scalar>
ExtForm<Scalar> one_form(Scalar a, Scalar b, Scalar c) {
  ExtForm<Scalar> f = ExtForm<Scalar>::Zero();
  f(mask::dx) = a;
  f(mask::dy) = b;
  f(mask::dtheta) = c;
  return f;
}

/// p dx∧dy + q dx∧dθ + r dy∧dθ
template <typename Scalar>
ExtForm<Scalar> two_form(Scalar p, Scalar q, Scalar r) {
  ExtForm<Scalar> f = ExtForm<Scalar>::Zero();
  f(mask::dxdy) = p;
  f(mask::dxdtheta) = q;
  f(mask::dydtheta) = r;
  return f;
}

template <typename Scalar>
ExtForm<Scalar> wedge(const ExtForm<Scalar>& a, const ExtForm<Scalar>& b) {
  ExtForm<Scalar> out = ExtForm<Scalar>::Zero();
  for (int i = 0; i < 8; ++i) {
    if (a(i) == Scalar(0)) continue;
    for (int j = 0; j < 8; ++j) {
      if ((i & j) != 0 || b(j) == Scalar(0)) continue;
      out(i | j) += Scalar(merge_sign(i, j)) * a(i) * b(j);
    }
  }
  return out;
}

/// Interior product v ⌐ f.
template <typename Scalar>
ExtForm<Scalar> interior(const Eigen::Matrix<Scalar, 3, 1>& v, const ExtForm<Scalar>& f) {
  ExtForm<Scalar> out = ExtForm<Scalar>::Zero();
  for (int m = 1; m < 8; ++m) {
    int position = 0;
    for (int k = 0; k < 3; ++k) {
      if (!(m & (1 << k))) continue;
      out(m & ~(1 << k)) += Scalar(position % 2 == 0 ? 1 : -1) * v(k) * f(m);
      ++position;
    }
  }
  return out;
}

/// Pullback of f under a linear map whose Jacobian has columns = images of
/// the source coordinate vectors (source also 3-dimensional).
template <typename Scalar>
ExtForm<Scalar> pullback(const Frame3<Scalar>& jac, const ExtForm<Scalar>& f) {
  ExtForm<Scalar> out = ExtForm<Scalar>::Zero();
  out(0) = f(0);
  for (int src = 1; src < 8; ++src) {
    int cols[3], nc = 0;
    for (int k = 0; k < 3; ++k)
      if (src & (1 << k)) cols[nc++] = k;
    for (int dst = 1; dst < 8; ++dst) {
      if (degree(dst) != nc || f(dst) == Scalar(0)) continue;
      int rows[3], nr = 0;
      for (int k = 0; k < 3; ++k)
        if (dst & (1 << k)) rows[nr++] = k;
      Scalar minor;
      if (nc == 1) {
        minor = jac(rows[0], cols[0]);
      } else if (nc == 2) {
        minor = jac(rows[0], cols[0]) * jac(rows[1], cols[1]) - jac(rows[0], cols[1]) * jac(rows[1], cols[0]);
      } else {
        minor = jac.determinant();
      }
      out(src) += f(dst) * minor;
    }
  }
  return out;
}

/// Contact form α = cos θ dx + sin θ dy and Reeb field T = cos θ ∂x + sin θ ∂y.
template <typename Scalar>
ExtForm<Scalar> contact_form(Scalar theta) {
  using std::cos;
  using std::sin;
  return one_form<Scalar>(cos(theta), sin(theta), Scalar(0));
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> reeb_field(Scalar theta) {
  using std::cos;
  using std::sin;
  return Eigen::Matrix<Scalar, 3, 1>(cos(theta), sin(theta), Scalar(0));
}

}  // namespace kinval
