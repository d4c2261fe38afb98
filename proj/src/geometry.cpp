#include "kinval/geometry.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace kinval {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidRegion: return "InvalidRegion";
    case ErrorKind::NonTransverse: return "NonTransverse";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::InteriorPoint: return "InteriorPoint";
    case ErrorKind::OutsideRegion: return "OutsideRegion";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NotMorse: return "NotMorse";
    case ErrorKind::CriticalValue: return "CriticalValue";
    case ErrorKind::NonVertical: return "NonVertical";
    case ErrorKind::SceneError: return "SceneError";
  }
  return "Unknown";
}

double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angle_difference(double a, double b) {
  double d = wrap_angle(b - a);
  return d > kPi ? d - kTwoPi : d;
}

double AngularArc::distance_to_endpoints(Direction d) const {
  const double to_start = std::abs(angle_difference(start.angle(), d.angle()));
  const double to_end = std::abs(angle_difference(end_angle(), d.angle()));
  return std::min(to_start, to_end);
}

double signed_area(const Loop& loop) {
  double twice = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    twice += cross<double>(loop[i], loop[(i + 1) % loop.size()]);
  }
  return 0.5 * twice;
}

double loop_length(const Loop& loop) {
  double len = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) len += (loop[(i + 1) % loop.size()] - loop[i]).norm();
  return len;
}

bool loop_contains(const Loop& loop, const Point& p) {
  bool inside = false;
  for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
    const Point& a = loop[i];
    const Point& b = loop[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
  const Point d = b - a;
  const double len2 = d.squaredNorm();
  double s = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * d - p).norm();
}

namespace {

bool segments_cross_properly(const Point& p0, const Point& p1, const Point& q0, const Point& q1,
                             double* tp = nullptr, double* tq = nullptr) {
  const Point d1 = p1 - p0;
  const Point d2 = q1 - q0;
  const double denom = cross<double>(d1, d2);
  if (denom == 0.0) return false;
  const Point w = q0 - p0;
  const double t = cross<double>(w, d2) / denom;
  const double u = cross<double>(w, d1) / denom;
  if (t <= 0.0 || t >= 1.0 || u <= 0.0 || u >= 1.0) return false;
  if (tp) *tp = t;
  if (tq) *tq = u;
  return true;
}

double segment_distance(const Point& p0, const Point& p1, const Point& q0, const Point& q1) {
  if (segments_cross_properly(p0, p1, q0, q1)) return 0.0;
  return std::min({distance_to_segment(p0, q0, q1), distance_to_segment(p1, q0, q1),
                   distance_to_segment(q0, p0, p1), distance_to_segment(q1, p0, p1)});
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidRegion, msg); }

Loop normalize_loop(Loop loop, std::size_t index, const Tolerance& tol) {
  if (loop.size() < 3) invalid("loop " + std::to_string(index) + " has fewer than 3 vertices");
  for (const Point& p : loop) {
    if (!p.allFinite()) invalid("loop " + std::to_string(index) + " has a non-finite vertex");
  }
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if ((loop[(i + 1) % loop.size()] - loop[i]).norm() <= tol.length) {
      invalid("loop " + std::to_string(index) + " has a zero-length edge at vertex " +
              std::to_string(i));
    }
  }
  // Merge collinear chains so every vertex is a genuine corner.
  bool changed = true;
  while (changed && loop.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Point& prev = loop[(i + loop.size() - 1) % loop.size()];
      const Point& cur = loop[i];
      const Point& next = loop[(i + 1) % loop.size()];
      const Point e1 = cur - prev;
      const Point e2 = next - cur;
      const double sin_turn = cross<double>(e1, e2) / (e1.norm() * e2.norm());
      if (std::abs(sin_turn) <= tol.angle * 1e-3) {
        if (e1.dot(e2) < 0.0) {
          invalid("loop " + std::to_string(index) + " folds back on itself at vertex " +
                  std::to_string(i));
        }
        loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (loop.size() < 3) invalid("loop " + std::to_string(index) + " is degenerate");
  return loop;
}

}  // namespace

PolygonalRegion PolygonalRegion::from_loops(std::vector<Loop> loops, const Tolerance& tol) {
  for (std::size_t k = 0; k < loops.size(); ++k) loops[k] = normalize_loop(std::move(loops[k]), k, tol);

  // Simplicity of each loop.
  for (std::size_t k = 0; k < loops.size(); ++k) {
    const Loop& lp = loops[k];
    const std::size_t n = lp.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
        if (adjacent) continue;
        if (segment_distance(lp[i], lp[(i + 1) % n], lp[j], lp[(j + 1) % n]) <= tol.length) {
          invalid("loop " + std::to_string(k) + " self-intersects (edges " + std::to_string(i) +
                  " and " + std::to_string(j) + ")");
        }
      }
    }
  }
  // Pairwise disjointness.
  for (std::size_t k = 0; k < loops.size(); ++k) {
    for (std::size_t m = k + 1; m < loops.size(); ++m) {
      const Loop& a = loops[k];
      const Loop& b = loops[m];
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (segment_distance(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]) <=
              tol.length) {
            invalid("loops " + std::to_string(k) + " and " + std::to_string(m) + " touch");
          }
        }
      }
    }
  }
  // Orientation must alternate with nesting depth.
  for (std::size_t k = 0; k < loops.size(); ++k) {
    int depth = 0;
    for (std::size_t m = 0; m < loops.size(); ++m) {
      if (m != k && loop_contains(loops[m], loops[k].front())) ++depth;
    }
    const bool ccw = signed_area(loops[k]) > 0.0;
    if ((depth % 2 == 0) != ccw) {
      invalid("orientation error in loop " + std::to_string(k) + ": expected " +
              (depth % 2 == 0 ? "counterclockwise outer loop" : "clockwise hole loop"));
    }
  }
  return PolygonalRegion(std::move(loops), Unchecked{});
}

PolygonalRegion PolygonalRegion::box(double x0, double y0, double x1, double y1) {
  return from_loops({{Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)}});
}

PolygonalRegion PolygonalRegion::regular_polygon(const Point& center, double radius, int sides,
                                                 double phase) {
  Loop loop;
  loop.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    loop.push_back(center + radius * unit_vector(phase + kTwoPi * i / sides));
  }
  return PolygonalRegion({std::move(loop)}, Unchecked{});
}

std::size_t PolygonalRegion::vertex_count() const {
  std::size_t n = 0;
  for (const Loop& l : loops_) n += l.size();
  return n;
}

Eigen::AlignedBox2d PolygonalRegion::bounding_box() const {
  Eigen::AlignedBox2d box;
  for (const Loop& l : loops_)
    for (const Point& p : l) box.extend(p);
  return box;
}

PointSet PointSet::from_points(std::vector<Point> pts, const Tolerance& tol) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].allFinite()) invalid("point " + std::to_string(i) + " is not finite");
    for (std::size_t j = 0; j < i; ++j) {
      if ((pts[i] - pts[j]).norm() <= tol.length) {
        invalid("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
  return PointSet{std::move(pts)};
}

int winding_number(const PolygonalRegion& a, const Point& p) {
  int w = 0;
  for (const Loop& l : a.loops()) {
    if (loop_contains(l, p)) w += signed_area(l) > 0.0 ? 1 : -1;
  }
  return w;
}

bool contains(const PolygonalRegion& a, const Point& p) { return winding_number(a, p) != 0; }

double distance_to_boundary(const PolygonalRegion& a, const Point& p) {
  double d = std::numeric_limits<double>::infinity();
  a.for_each_edge([&](std::size_t, std::size_t, const Point& p0, const Point& p1) {
    d = std::min(d, distance_to_segment(p, p0, p1));
  });
  return d;
}

PolygonalRegion apply_motion(const RigidMotion& g, const PolygonalRegion& a) {
  const Mat2<double> r = rotation(g.alpha);
  std::vector<Loop> loops = a.loops();
  for (Loop& l : loops)
    for (Point& p : l) p = r * p + g.t;
  return PolygonalRegion(std::move(loops), PolygonalRegion::Unchecked{});
}

PointSet apply_motion(const RigidMotion& g, const PointSet& a) {
  PointSet out = a;
  for (Point& p : out.points) p = g.apply(p);
  return out;
}

Shape apply_motion(const RigidMotion& g, const Shape& a) {
  return std::visit([&](const auto& s) -> Shape { return apply_motion(g, s); }, a);
}

AreaPerimeter area_perimeter(const PolygonalRegion& a) {
  AreaPerimeter out;
  for (const Loop& l : a.loops()) {
    out.area += signed_area(l);
    out.perimeter += loop_length(l);
  }
  return out;
}

std::string TransversalityReport::summary() const {
  if (transverse) return "transverse";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < 4; ++i) os << "; " << violations[i].detail;
  return os.str();
}

namespace {

void check_vertices_against(const PolygonalRegion& from, const PolygonalRegion& against,
                            const char* label, const Tolerance& tol, TransversalityReport& rep) {
  const Eigen::AlignedBox2d box = against.bounding_box();
  for (const Loop& l : from.loops()) {
    for (const Point& v : l) {
      if (box.exteriorDistance(v) > tol.length) continue;
      const double d = distance_to_boundary(against, v);
      if (d <= tol.length) {
        std::ostringstream os;
        os << label << " vertex (" << v.x() << ", " << v.y() << ") lies within " << d
           << " of the other boundary";
        rep.transverse = false;
        rep.violations.push_back({TransversalityViolation::Kind::VertexOnBoundary, v, d, os.str()});
      }
    }
  }
}

}  // namespace

TransversalityReport transversality_check(const PolygonalRegion& a, const PolygonalRegion& b,
                                          const Tolerance& tol) {
  TransversalityReport rep;
  check_vertices_against(a, b, "A", tol, rep);
  check_vertices_against(b, a, "B", tol, rep);
  for (const EdgeCrossing& c : boundary_crossings(a, b)) {
    const Loop& la = a.loops()[c.loop_a];
    const Loop& lb = b.loops()[c.loop_b];
    const Point da = la[(c.edge_a + 1) % la.size()] - la[c.edge_a];
    const Point db = lb[(c.edge_b + 1) % lb.size()] - lb[c.edge_b];
    const double angle = std::asin(std::min(1.0, std::abs(cross<double>(da, db)) / (da.norm() * db.norm())));
    if (angle <= tol.angle) {
      std::ostringstream os;
      os << "edges cross at (" << c.where.x() << ", " << c.where.y() << ") with angle " << angle;
      rep.transverse = false;
      rep.violations.push_back({TransversalityViolation::Kind::ShallowCrossing, c.where, angle, os.str()});
    }
  }
  return rep;
}

TransversalityReport transversality_check(const PointSet& a, const PolygonalRegion& b,
                                          const Tolerance& tol) {
  TransversalityReport rep;
  for (const Point& p : a.points) {
    const double d = distance_to_boundary(b, p);
    if (d <= tol.length) {
      std::ostringstream os;
      os << "point (" << p.x() << ", " << p.y() << ") lies within " << d << " of the boundary";
      rep.transverse = false;
      rep.violations.push_back({TransversalityViolation::Kind::VertexOnBoundary, p, d, os.str()});
    }
  }
  return rep;
}

std::vector<EdgeCrossing> boundary_crossings(const PolygonalRegion& a, const PolygonalRegion& b) {
  std::vector<EdgeCrossing> out;
  if (a.empty() || b.empty()) return out;
  if (!a.bounding_box().intersects(b.bounding_box())) return out;
  for (std::size_t la = 0; la < a.loops().size(); ++la) {
    const Loop& pa = a.loops()[la];
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const Point& p0 = pa[i];
      const Point& p1 = pa[(i + 1) % pa.size()];
      const double pxmin = std::min(p0.x(), p1.x()), pxmax = std::max(p0.x(), p1.x());
      const double pymin = std::min(p0.y(), p1.y()), pymax = std::max(p0.y(), p1.y());
      for (std::size_t lb = 0; lb < b.loops().size(); ++lb) {
        const Loop& pb = b.loops()[lb];
        for (std::size_t j = 0; j < pb.size(); ++j) {
          const Point& q0 = pb[j];
          const Point& q1 = pb[(j + 1) % pb.size()];
          if (std::max(q0.x(), q1.x()) < pxmin || std::min(q0.x(), q1.x()) > pxmax ||
              std::max(q0.y(), q1.y()) < pymin || std::min(q0.y(), q1.y()) > pymax) {
            continue;
          }
          double t = 0.0, u = 0.0;
          if (segments_cross_properly(p0, p1, q0, q1, &t, &u)) {
            out.push_back({la, i, lb, j, t, u, p0 + t * (p1 - p0)});
          }
        }
      }
    }
  }
  return out;
}

NormalCone normal_cone_at(const PolygonalRegion& a, const Point& s, const Tolerance& tol) {
  for (const Loop& l : a.loops()) {
    const std::size_t n = l.size();
    for (std::size_t i = 0; i < n; ++i) {
      if ((l[i] - s).norm() > tol.length) continue;
      const Point t_in = l[i] - l[(i + n - 1) % n];
      const Point t_out = l[(i + 1) % n] - l[i];
      const double n_in = std::atan2(t_in.y(), t_in.x()) - kPi / 2;
      const double n_out = std::atan2(t_out.y(), t_out.x()) - kPi / 2;
      if (cross<double>(t_in, t_out) > 0.0) {
        return AngularArc{Direction(n_in), wrap_angle(n_out - n_in), +1};
      }
      return AngularArc{Direction(n_out), wrap_angle(n_in - n_out), -1};
    }
  }
  for (const Loop& l : a.loops()) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      const Point& p0 = l[i];
      const Point& p1 = l[(i + 1) % l.size()];
      if (distance_to_segment(s, p0, p1) <= tol.length) {
        const Point t = p1 - p0;
        return Direction(std::atan2(t.y(), t.x()) - kPi / 2);
      }
    }
  }
  if (contains(a, s)) {
    throw Error(ErrorKind::InteriorPoint, "normal cone is empty at interior points");
  }
  throw Error(ErrorKind::OutsideRegion, "point does not belong to the region");
}

}  // namespace kinval
