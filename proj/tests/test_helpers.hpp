#pragma once

#include <algorithm>
#include <vector>

#include "kinval/geometry.hpp"

namespace kinval::testing {

inline std::vector<Point> sorted_vertices(const PolygonalRegion& a) {
  std::vector<Point> v;
  for (const Loop& l : a.loops()) v.insert(v.end(), l.begin(), l.end());
  std::sort(v.begin(), v.end(), [](const Point& p, const Point& q) {
    return p.x() != q.x() ? p.x() < q.x() : p.y() < q.y();
  });
  return v;
}

inline double vertex_distance(const PolygonalRegion& a, const PolygonalRegion& b) {
  const std::vector<Point> va = sorted_vertices(a), vb = sorted_vertices(b);
  if (va.size() != vb.size()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) worst = std::max(worst, (va[i] - vb[i]).norm());
  return worst;
}

inline PolygonalRegion l_region() {
  return PolygonalRegion::from_loops({{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
}

}  // namespace kinval::testing
