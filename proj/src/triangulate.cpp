#include <algorithm>
#include <limits>
#include <set>

#include "kinval/geometry.hpp"

namespace kinval {

namespace {

struct Vert {
  Point p;
  int id;
};

double orient(const Point& a, const Point& b, const Point& c) { return cross<double>(b - a, c - a); }

bool in_triangle_closed(const Point& a, const Point& b, const Point& c, const Point& p) {
  return orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0;
}

// Index of the loop that directly contains loop k, or -1.
std::vector<int> loop_parents(const std::vector<Loop>& loops) {
  std::vector<int> parent(loops.size(), -1);
  for (std::size_t k = 0; k < loops.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < loops.size(); ++m) {
      if (m == k || !loop_contains(loops[m], loops[k].front())) continue;
      const double area = std::abs(signed_area(loops[m]));
      if (area < best) {
        best = area;
        parent[k] = static_cast<int>(m);
      }
    }
  }
  return parent;
}

// Does the direction from poly[i] toward q point into the interior wedge at i?
bool locally_inside(const std::vector<Vert>& poly, std::size_t i, const Point& q) {
  const std::size_t n = poly.size();
  const Point& prev = poly[(i + n - 1) % n].p;
  const Point& cur = poly[i].p;
  const Point& next = poly[(i + 1) % n].p;
  if (orient(prev, cur, next) >= 0.0) {
    return orient(cur, next, q) > 0.0 && orient(prev, cur, q) > 0.0;
  }
  return !(orient(cur, next, q) <= 0.0 && orient(prev, cur, q) <= 0.0);
}

void bridge_hole(std::vector<Vert>& poly, const std::vector<Vert>& hole) {
  std::size_t mi = 0;
  for (std::size_t i = 1; i < hole.size(); ++i)
    if (hole[i].p.x() > hole[mi].p.x()) mi = i;
  const Point m = hole[mi].p;

  // Closest outer edge hit by the ray from m in +x.
  const std::size_t n = poly.size();
  double best_x = std::numeric_limits<double>::infinity();
  std::size_t hit = n;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i].p;
    const Point& b = poly[(i + 1) % n].p;
    if ((a.y() > m.y()) == (b.y() > m.y())) continue;
    const double x = a.x() + (m.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
    if (x >= m.x() && x < best_x) {
      best_x = x;
      hit = a.x() > b.x() ? i : (i + 1) % n;
    }
  }
  if (hit == n) throw Error(ErrorKind::InvalidRegion, "hole is not enclosed by its outer loop");

  // A reflex vertex inside the triangle (m, i, p) may block the bridge; take
  // the one closest in angle to the ray.
  const Point ip(best_x, m.y());
  const Point pv = poly[hit].p;
  std::size_t choice = hit;
  double best_tan = std::numeric_limits<double>::infinity();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& q = poly[i].p;
    if (q.x() < m.x() || (q - pv).norm() == 0.0) continue;
    const bool upper = pv.y() >= m.y();
    const bool inside = upper ? in_triangle_closed(m, ip, pv, q) : in_triangle_closed(m, pv, ip, q);
    if (!inside) continue;
    const double tan_angle = std::abs(q.y() - m.y()) / std::max(q.x() - m.x(), 1e-300);
    const double dist = (q - m).norm();
    if ((tan_angle < best_tan || (tan_angle == best_tan && dist < best_dist)) &&
        locally_inside(poly, i, m)) {
      best_tan = tan_angle;
      best_dist = dist;
      choice = i;
    }
  }
  // Among coincident occurrences of the chosen vertex, use the one whose wedge sees m.
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i].id == poly[choice].id && locally_inside(poly, i, m)) {
      choice = i;
      break;
    }
  }

  std::vector<Vert> merged;
  merged.reserve(n + hole.size() + 2);
  merged.insert(merged.end(), poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(choice) + 1);
  for (std::size_t k = 0; k <= hole.size(); ++k) merged.push_back(hole[(mi + k) % hole.size()]);
  merged.insert(merged.end(), poly.begin() + static_cast<std::ptrdiff_t>(choice), poly.end());
  poly = std::move(merged);
}

void ear_clip(std::vector<Vert> poly, std::vector<Triangle>& out) {
  while (poly.size() > 3) {
    const std::size_t n = poly.size();
    std::size_t ear = n;
    double best_convexity = 0.0;
    for (std::size_t i = 0; i < n && ear == n; ++i) {
      const Vert& a = poly[(i + n - 1) % n];
      const Vert& b = poly[i];
      const Vert& c = poly[(i + 1) % n];
      const double o = orient(a.p, b.p, c.p);
      if (o <= 0.0) continue;
      best_convexity = std::max(best_convexity, o);
      bool blocked = false;
      for (std::size_t k = 0; k < n && !blocked; ++k) {
        const Point& q = poly[k].p;
        if (q == a.p || q == b.p || q == c.p) continue;
        if (in_triangle_closed(a.p, b.p, c.p, q)) blocked = true;
      }
      if (!blocked) ear = i;
    }
    if (ear == n) {
      // Round-off fallback: clip the most convex corner.
      for (std::size_t i = 0; i < n; ++i) {
        if (orient(poly[(i + n - 1) % n].p, poly[i].p, poly[(i + 1) % n].p) == best_convexity) {
          ear = i;
          break;
        }
      }
      if (ear == n) throw Error(ErrorKind::InvalidRegion, "triangulation found no ear");
    }
    const Vert& a = poly[(ear + n - 1) % n];
    const Vert& b = poly[ear];
    const Vert& c = poly[(ear + 1) % n];
    out.push_back({a.p, b.p, c.p, {a.id, b.id, c.id}});
    poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(ear));
  }
  if (poly.size() == 3 && orient(poly[0].p, poly[1].p, poly[2].p) > 0.0) {
    out.push_back({poly[0].p, poly[1].p, poly[2].p, {poly[0].id, poly[1].id, poly[2].id}});
  }
}

}  // namespace

std::vector<Triangle> triangulate(const PolygonalRegion& a) {
  std::vector<Triangle> out;
  const std::vector<Loop>& loops = a.loops();
  if (loops.empty()) return out;
  const std::vector<int> parent = loop_parents(loops);

  std::vector<std::vector<Vert>> verts(loops.size());
  int id = 0;
  for (std::size_t k = 0; k < loops.size(); ++k)
    for (const Point& p : loops[k]) verts[k].push_back({p, id++});

  for (std::size_t k = 0; k < loops.size(); ++k) {
    if (signed_area(loops[k]) <= 0.0) continue;
    std::vector<std::size_t> holes;
    for (std::size_t m = 0; m < loops.size(); ++m)
      if (parent[m] == static_cast<int>(k)) holes.push_back(m);
    auto max_x = [&](std::size_t m) {
      double x = -std::numeric_limits<double>::infinity();
      for (const Point& p : loops[m]) x = std::max(x, p.x());
      return x;
    };
    std::sort(holes.begin(), holes.end(), [&](std::size_t i, std::size_t j) { return max_x(i) > max_x(j); });
    std::vector<Vert> poly = verts[k];
    for (std::size_t h : holes) bridge_hole(poly, verts[h]);
    ear_clip(std::move(poly), out);
  }
  return out;
}

int euler_combinatorial(const PolygonalRegion& a) {
  const std::vector<Triangle> tris = triangulate(a);
  std::set<int> vs;
  std::set<std::pair<int, int>> es;
  for (const Triangle& t : tris) {
    for (int k = 0; k < 3; ++k) {
      const int u = t.ids[k];
      const int v = t.ids[(k + 1) % 3];
      vs.insert(u);
      es.insert({std::min(u, v), std::max(u, v)});
    }
  }
  return static_cast<int>(vs.size()) - static_cast<int>(es.size()) + static_cast<int>(tris.size());
}

int euler_combinatorial(const PointSet& a) { return static_cast<int>(a.points.size()); }

int euler_combinatorial(const Shape& a) {
  return std::visit([](const auto& s) { return euler_combinatorial(s); }, a);
}

}  // namespace kinval
