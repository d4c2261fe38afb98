#pragma once

#include <cmath>
#include <vector>

#include "kinval/errors.hpp"
#include "kinval/geometry.hpp"

namespace kinval {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Cached n-point rule (Golub–Welsch, Newton-polished). Thread-safe.
const GaussRule& gauss_legendre(int n);

struct QuadratureOptions {
  int nodes = 16;          // per panel
  double rel_tol = 1e-10;  // successive dyadic estimates
  double abs_floor = 1e-14;
  int max_panels = 1024;
};

template <typename F>
double integrate_fixed(F&& f, double a, double b, int panels, int nodes) {
  const GaussRule& rule = gauss_legendre(nodes);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double part = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) part += rule.w[i] * f(mid + 0.5 * h * rule.x[i]);
    sum += 0.5 * h * part;
  }
  return sum;
}

/// Dyadic panel doubling until successive estimates agree. Throws
/// QuadratureFailure past max_panels.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  const GaussRule& rule = gauss_legendre(opt.nodes);
  auto level = [&](int panels, double& l1) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    l1 = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double v = rule.w[i] * f(mid + 0.5 * h * rule.x[i]);
        sum += v;
        l1 += std::abs(v);
      }
    }
    l1 *= 0.5 * std::abs(h);
    return 0.5 * h * sum;
  };
  double l1 = 0.0;
  double prev = level(1, l1);
  for (int panels = 2; panels <= opt.max_panels; panels *= 2) {
    const double cur = level(panels, l1);
    if (std::abs(cur - prev) <= std::max(opt.rel_tol * l1, opt.abs_floor)) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureFailure,
              "1D quadrature did not converge within " + std::to_string(opt.max_panels) + " panels");
}

/// Collapsed (Duffy) Gauss–Legendre product rule on a triangle with n×n nodes.
template <typename F>
double integrate_triangle_fixed(F&& f, const Point& a, const Point& b, const Point& c, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double jac = std::abs(cross<double>(b - a, c - a));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double u = 0.5 * (rule.x[i] + 1.0);
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double v = 0.5 * (rule.x[j] + 1.0);
      const double s = u;
      const double t = v * (1.0 - u);
      sum += 0.25 * rule.w[i] * rule.w[j] * (1.0 - u) * f(Point(a + s * (b - a) + t * (c - a)));
    }
  }
  return jac * sum;
}

/// Adaptive 4-way subdivision of a triangle until the n-point product rule
/// agrees with the sum over its four children.
template <typename F>
double integrate_triangle(F&& f, const Point& a, const Point& b, const Point& c,
                          const QuadratureOptions& opt = {}, int n = 8) {
  struct Tri {
    Point a, b, c;
    double est;
    int depth;
  };
  const double whole = integrate_triangle_fixed(f, a, b, c, n);
  std::vector<Tri> stack{{a, b, c, whole, 0}};
  double total = 0.0;
  double scale = std::abs(whole);
  int budget = opt.max_panels * 4;
  while (!stack.empty()) {
    Tri t = stack.back();
    stack.pop_back();
    const Point ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
    const Tri kids[4] = {{t.a, ab, ca, 0.0, t.depth + 1},
                         {ab, t.b, bc, 0.0, t.depth + 1},
                         {ca, bc, t.c, 0.0, t.depth + 1},
                         {ab, bc, ca, 0.0, t.depth + 1}};
    double refined = 0.0;
    double est[4];
    for (int k = 0; k < 4; ++k) {
      est[k] = integrate_triangle_fixed(f, kids[k].a, kids[k].b, kids[k].c, n);
      refined += est[k];
    }
    const double local_tol = std::max(opt.rel_tol * scale * std::pow(0.25, t.depth), opt.abs_floor);
    if (std::abs(refined - t.est) <= local_tol || t.depth >= 12) {
      total += refined;
      continue;
    }
    if (--budget <= 0) throw Error(ErrorKind::QuadratureFailure, "triangle quadrature budget exhausted");
    for (int k = 0; k < 4; ++k) stack.push_back({kids[k].a, kids[k].b, kids[k].c, est[k], t.depth + 1});
  }
  return total;
}

/// Integral of f over a polygonal region through its triangulation.
template <typename F>
double integrate_region(F&& f, const PolygonalRegion& a, const QuadratureOptions& opt = {}, int n = 8) {
  double total = 0.0;
  for (const Triangle& t : triangulate(a)) total += integrate_triangle(f, t.a, t.b, t.c, opt, n);
  return total;
}

}  // namespace kinval
