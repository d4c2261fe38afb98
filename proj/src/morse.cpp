#include "kinval/morse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kinval {

double MorseFunction::value(const Point& x) const {
  return kind == Kind::Affine ? u.dot(x) : 0.5 * (x - p).squaredNorm();
}

Point MorseFunction::gradient(const Point& x) const { return kind == Kind::Affine ? u : Point(x - p); }

namespace {

struct VertexCone {
  Point v;
  AngularArc arc;
};

std::vector<VertexCone> vertex_cones(const PolygonalRegion& a) {
  std::vector<VertexCone> out;
  for (const Loop& l : a.loops())
    for (const Point& v : l) out.push_back({v, std::get<AngularArc>(normal_cone_at(a, v))});
  return out;
}

Direction direction_of(const Point& w) { return Direction(std::atan2(w.y(), w.x())); }

}  // namespace

MorseDiagnostic is_morse_on(const MorseFunction& f, const PolygonalRegion& a, const Tolerance& tol) {
  MorseDiagnostic d;
  auto fail = [&](const std::string& why) {
    d.morse = false;
    d.problems.push_back(why);
  };
  if (f.kind == MorseFunction::Kind::Affine && f.u.norm() <= tol.length) fail("affine covector is zero");
  for (const VertexCone& c : vertex_cones(a)) {
    const Point g = f.gradient(c.v);
    if (g.norm() <= tol.length) {
      fail("gradient vanishes at a vertex");
      continue;
    }
    const double dist = c.arc.distance_to_endpoints(direction_of(-g));
    if (dist <= tol.angle) {
      std::ostringstream os;
      os << "-df at vertex (" << c.v.x() << ", " << c.v.y() << ") is within " << dist
         << " rad of a normal-cone endpoint";
      fail(os.str());
    }
  }
  if (f.kind == MorseFunction::Kind::Radial) {
    const double dist = distance_to_boundary(a, f.p);
    if (dist <= tol.length) fail("radial center lies on the boundary");
  }
  return d;
}

std::vector<CriticalRecord> critical_points(const MorseFunction& f, const PolygonalRegion& a,
                                            const Tolerance& tol) {
  const MorseDiagnostic diag = is_morse_on(f, a, tol);
  if (!diag) throw Error(ErrorKind::NotMorse, diag.problems.front());
  std::vector<CriticalRecord> out;
  for (const VertexCone& c : vertex_cones(a)) {
    if (c.arc.contains(direction_of(-f.gradient(c.v)))) {
      out.push_back({c.v, CriticalRecord::Stratum::Vertex, c.arc.multiplicity, f.value(c.v)});
    }
  }
  if (f.kind == MorseFunction::Kind::Radial) {
    if (contains(a, f.p)) out.push_back({f.p, CriticalRecord::Stratum::Interior, +1, 0.0});
    // Feet of perpendiculars from p onto edges with p on the outer side.
    a.for_each_edge([&](std::size_t, std::size_t, const Point& p0, const Point& p1) {
      const Point e = (p1 - p0).normalized();
      const Point n(e.y(), -e.x());
      const double along = (f.p - p0).dot(e);
      const double len = (p1 - p0).norm();
      if (along > 0.0 && along < len && (f.p - p0).dot(n) > 0.0) {
        const Point foot = p0 + along * e;
        out.push_back({foot, CriticalRecord::Stratum::Edge, +1, f.value(foot)});
      }
    });
  }
  return out;
}

int euler_via_morse(const MorseFunction& f, const PolygonalRegion& a, const Tolerance& tol) {
  int chi = 0;
  for (const CriticalRecord& r : critical_points(f, a, tol)) chi += r.sign;
  return chi;
}

int sublevel_euler(const MorseFunction& f, const PolygonalRegion& a, double t, const Tolerance& tol) {
  int chi = 0;
  for (const CriticalRecord& r : critical_points(f, a, tol)) {
    if (std::abs(r.value - t) <= tol.length) {
      throw Error(ErrorKind::CriticalValue, "level " + std::to_string(t) + " is a critical value");
    }
    if (r.value <= t) chi += r.sign;
  }
  return chi;
}

std::pair<int, int> sublevel_euler_by_clipping(const MorseFunction& f, const PolygonalRegion& a, double t) {
  if (a.empty()) return {0, 0};
  const Eigen::AlignedBox2d box = a.bounding_box();
  const double reach = (box.max() - box.min()).norm() + box.max().norm() + box.min().norm() + 1.0;
  if (f.kind == MorseFunction::Kind::Affine) {
    // {u·x ≤ t} as a large rectangle in the frame (û, û⊥).
    const Point u = f.u.normalized();
    const Point w(-u.y(), u.x());
    const double level = t / f.u.norm();
    const Loop loop{level * u - reach * w, level * u + reach * w,
                    (level - 2 * reach) * u + reach * w, (level - 2 * reach) * u - reach * w};
    // (level·u − reach·w) → (level·u + reach·w) runs along +w, keeping the
    // halfplane on the left.
    const PolygonalRegion half = PolygonalRegion::from_loops({loop});
    const int chi = euler_combinatorial(intersect_regions(a, half));
    return {chi, chi};
  }
  if (t <= 0.0) return {0, 0};
  const double radius = std::sqrt(2.0 * t);
  constexpr int kSides = 720;
  const PolygonalRegion inner = PolygonalRegion::regular_polygon(f.p, radius, kSides, 0.1234);
  const PolygonalRegion outer =
      PolygonalRegion::regular_polygon(f.p, radius / std::cos(kPi / kSides), kSides, 0.1234);
  return {euler_combinatorial(intersect_regions(a, inner)), euler_combinatorial(intersect_regions(a, outer))};
}

}  // namespace kinval
