#include <algorithm>
#include <map>

#include "kinval/geometry.hpp"

namespace kinval {

namespace {

struct SubSegment {
  int from;
  int to;
};

// Splits the boundary of `self` at the crossings with `other` and keeps the
// pieces whose midpoints lie inside (keep_inside) or outside `other`.
void collect_pieces(const PolygonalRegion& self, const PolygonalRegion& other, bool self_is_a,
                    int vertex_offset, int crossing_offset, const std::vector<EdgeCrossing>& xs,
                    bool keep_inside, std::vector<Point>& nodes, std::vector<SubSegment>& out) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<double, int>>> splits;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const EdgeCrossing& c = xs[k];
    if (self_is_a) {
      splits[{c.loop_a, c.edge_a}].push_back({c.ta, crossing_offset + static_cast<int>(k)});
    } else {
      splits[{c.loop_b, c.edge_b}].push_back({c.tb, crossing_offset + static_cast<int>(k)});
    }
  }
  int base = vertex_offset;
  for (std::size_t l = 0; l < self.loops().size(); ++l) {
    const Loop& loop = self.loops()[l];
    const int n = static_cast<int>(loop.size());
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<double, int>> chain;
      chain.push_back({0.0, base + i});
      if (auto it = splits.find({l, static_cast<std::size_t>(i)}); it != splits.end()) {
        std::vector<std::pair<double, int>> mids = it->second;
        std::sort(mids.begin(), mids.end());
        chain.insert(chain.end(), mids.begin(), mids.end());
      }
      chain.push_back({1.0, base + (i + 1) % n});
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const Point mid = 0.5 * (nodes[chain[k].second] + nodes[chain[k + 1].second]);
        if (contains(other, mid) == keep_inside) out.push_back({chain[k].second, chain[k + 1].second});
      }
    }
    base += n;
  }
}

PolygonalRegion combine(const PolygonalRegion& a, const PolygonalRegion& b, bool intersection,
                        const Tolerance& tol) {
  const TransversalityReport rep = transversality_check(a, b, tol);
  if (!rep) throw Error(ErrorKind::NonTransverse, rep.summary());
  const std::vector<EdgeCrossing> xs = boundary_crossings(a, b);

  std::vector<Point> nodes;
  for (const Loop& l : a.loops()) nodes.insert(nodes.end(), l.begin(), l.end());
  const int b_offset = static_cast<int>(nodes.size());
  for (const Loop& l : b.loops()) nodes.insert(nodes.end(), l.begin(), l.end());
  const int x_offset = static_cast<int>(nodes.size());
  for (const EdgeCrossing& c : xs) nodes.push_back(c.where);

  std::vector<SubSegment> kept;
  collect_pieces(a, b, true, 0, x_offset, xs, intersection, nodes, kept);
  collect_pieces(b, a, false, b_offset, x_offset, xs, intersection, nodes, kept);

  std::vector<int> next(nodes.size(), -1);
  for (const SubSegment& s : kept) {
    if (next[s.from] != -1) throw Error(ErrorKind::NonTransverse, "ambiguous boundary at a crossing");
    next[s.from] = s.to;
  }
  std::vector<char> used(nodes.size(), 0);
  std::vector<Loop> loops;
  for (const SubSegment& s : kept) {
    if (used[s.from]) continue;
    Loop loop;
    int cur = s.from;
    while (!used[cur]) {
      used[cur] = 1;
      loop.push_back(nodes[cur]);
      cur = next[cur];
      if (cur < 0) throw Error(ErrorKind::NonTransverse, "open boundary chain in boolean operation");
    }
    loops.push_back(std::move(loop));
  }
  return PolygonalRegion(std::move(loops), PolygonalRegion::Unchecked{});
}

}  // namespace

PolygonalRegion intersect_regions(const PolygonalRegion& a, const PolygonalRegion& b,
                                  const Tolerance& tol) {
  if (a.empty() || b.empty()) return {};
  return combine(a, b, true, tol);
}

PolygonalRegion union_regions(const PolygonalRegion& a, const PolygonalRegion& b,
                              const Tolerance& tol) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return combine(a, b, false, tol);
}

PointSet intersect_regions(const PointSet& a, const PolygonalRegion& b, const Tolerance& tol) {
  const TransversalityReport rep = transversality_check(a, b, tol);
  if (!rep) throw Error(ErrorKind::NonTransverse, rep.summary());
  PointSet out;
  for (const Point& p : a.points)
    if (contains(b, p)) out.points.push_back(p);
  return out;
}

Shape intersect_regions(const Shape& a, const PolygonalRegion& b, const Tolerance& tol) {
  return std::visit([&](const auto& s) -> Shape { return intersect_regions(s, b, tol); }, a);
}

}  // namespace kinval
