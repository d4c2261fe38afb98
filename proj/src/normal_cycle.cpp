#include "kinval/normal_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace kinval {

namespace {

double edge_normal_angle(const Point& p0, const Point& p1) {
  const Point t = p1 - p0;
  return std::atan2(t.y(), t.x()) - kPi / 2;
}

}  // namespace

NormalCycle build_normal_cycle(const PolygonalRegion& a) {
  NormalCycle n;
  for (const Loop& loop : a.loops()) {
    const std::size_t m = loop.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point& p0 = loop[i];
      const Point& p1 = loop[(i + 1) % m];
      n.edges.push_back({p0, p1, Direction(edge_normal_angle(p0, p1)), 1});
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Point& prev = loop[(i + m - 1) % m];
      const Point& cur = loop[i];
      const Point& next = loop[(i + 1) % m];
      const double n_in = edge_normal_angle(prev, cur);
      const double n_out = edge_normal_angle(cur, next);
      if (cross<double>(cur - prev, next - cur) > 0.0) {
        n.arcs.push_back({cur, {Direction(n_in), wrap_angle(n_out - n_in), +1}});
      } else {
        n.arcs.push_back({cur, {Direction(n_out), wrap_angle(n_in - n_out), -1}});
      }
    }
  }
  return n;
}

NormalCycle build_normal_cycle(const PointSet& a) {
  NormalCycle n;
  for (const Point& p : a.points) n.arcs.push_back({p, {Direction(0.0), kTwoPi, +1}});
  return n;
}

NormalCycle build_normal_cycle(const Shape& a) {
  return std::visit([](const auto& s) { return build_normal_cycle(s); }, a);
}

NormalCycle act(const RigidMotion& g, const NormalCycle& n) {
  NormalCycle out = n;
  for (EdgePiece& e : out.edges) {
    e.p0 = g.apply(e.p0);
    e.p1 = g.apply(e.p1);
    e.normal = g.apply(e.normal);
  }
  for (ArcPiece& a : out.arcs) {
    a.base = g.apply(a.base);
    a.arc.start = g.apply(a.arc.start);
  }
  return out;
}

NormalCycle antipodal(const NormalCycle& n) {
  NormalCycle out = n;
  for (EdgePiece& e : out.edges) e.normal = e.normal.opposite();
  for (ArcPiece& a : out.arcs) a.arc.start = a.arc.start.opposite();
  return out;
}

double turning(const NormalCycle& n) {
  double t = 0.0;
  for (const ArcPiece& a : n.arcs) t += a.arc.multiplicity * a.arc.sweep;
  return t;
}

double closedness_defect(const NormalCycle& n, double tol) {
  struct Endpoint {
    Point x;
    double theta;
    int weight;
  };
  std::vector<Endpoint> pts;
  for (const EdgePiece& e : n.edges) {
    pts.push_back({e.p1, e.normal.angle(), e.multiplicity});
    pts.push_back({e.p0, e.normal.angle(), -e.multiplicity});
  }
  for (const ArcPiece& a : n.arcs) {
    if (a.arc.sweep >= kTwoPi) continue;  // full circles have no boundary
    pts.push_back({a.base, a.arc.end().angle(), a.arc.multiplicity});
    pts.push_back({a.base, a.arc.start.angle(), -a.arc.multiplicity});
  }
  std::vector<char> done(pts.size(), 0);
  double defect = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (done[i]) continue;
    int total = 0;
    for (std::size_t j = i; j < pts.size(); ++j) {
      if (done[j]) continue;
      if ((pts[j].x - pts[i].x).norm() <= tol &&
          std::abs(angle_difference(pts[i].theta, pts[j].theta)) <= tol) {
        total += pts[j].weight;
        done[j] = 1;
      }
    }
    if (total != 0) defect = std::max(defect, 1.0 + pts[i].x.norm());
  }
  return defect;
}

double legendrian_defect(const NormalCycle& n, int nodes) {
  const GaussRule& rule = gauss_legendre(nodes);
  double worst = 0.0;
  for (const EdgePiece& e : n.edges) {
    const Point d = (e.p1 - e.p0).normalized();
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const ExtForm<double> alpha = contact_form(e.normal.angle());
      worst = std::max(worst, std::abs(alpha(mask::dx) * d.x() + alpha(mask::dy) * d.y()));
    }
  }
  // Arc tangents are ∂θ, on which α vanishes identically.
  return worst;
}

double integrate_form(const EdgePiece& e, const CoefForm1& beta, const QuadratureOptions& opt) {
  if (beta.spatial_zero) return 0.0;
  const Point d = e.p1 - e.p0;
  const double th = e.normal.angle();
  const double value = integrate_adaptive(
      [&](double s) {
        const Point x = e.p0 + s * d;
        const Eigen::Vector3d c = beta(x.x(), x.y(), th);
        return c(0) * d.x() + c(1) * d.y();
      },
      0.0, 1.0, opt);
  return e.multiplicity * value;
}

double integrate_form(const ArcPiece& a, const CoefForm1& beta, const QuadratureOptions& opt) {
  if (beta.angular_zero) return 0.0;
  const double t0 = a.arc.start.angle();
  const double value = integrate_adaptive(
      [&](double th) { return beta(a.base.x(), a.base.y(), th)(2); }, t0, t0 + a.arc.sweep, opt);
  return a.arc.multiplicity * value;
}

double integrate_form(const std::vector<ArcPiece>& arcs, const CoefForm1& beta,
                      const QuadratureOptions& opt) {
  double total = 0.0;
  for (const ArcPiece& a : arcs) total += integrate_form(a, beta, opt);
  return total;
}

double integrate_form(const NormalCycle& n, const CoefForm1& beta, const QuadratureOptions& opt) {
  double total = 0.0;
  for (const EdgePiece& e : n.edges) total += integrate_form(e, beta, opt);
  total += integrate_form(n.arcs, beta, opt);
  return total;
}

double integrate_form(const Decomposition& d, const CoefForm1& beta, const QuadratureOptions& opt) {
  return integrate_form(d.piece_a, beta, opt) + integrate_form(d.piece_b, beta, opt) +
         integrate_form(d.joint_arcs, beta, opt);
}

NormalCycle restrict_to_region(const NormalCycle& n, const PolygonalRegion& b, const Tolerance& tol) {
  NormalCycle out;
  if (b.empty()) return out;
  for (const ArcPiece& a : n.arcs) {
    if (distance_to_boundary(b, a.base) <= tol.length) {
      throw Error(ErrorKind::NonGeneric, "arc base lies on the boundary of the restricting region");
    }
    if (contains(b, a.base)) out.arcs.push_back(a);
  }
  for (const EdgePiece& e : n.edges) {
    const Point d = e.p1 - e.p0;
    std::vector<double> cuts{0.0, 1.0};
    b.for_each_edge([&](std::size_t, std::size_t, const Point& q0, const Point& q1) {
      const Point f = q1 - q0;
      const double denom = cross<double>(d, f);
      if (std::abs(denom) <= tol.angle * d.norm() * f.norm()) {
        // Parallel: only a problem when collinear and overlapping.
        if (distance_to_segment(q0, e.p0, e.p1) <= tol.length ||
            distance_to_segment(q1, e.p0, e.p1) <= tol.length) {
          throw Error(ErrorKind::NonGeneric, "edge piece runs along the restricting boundary");
        }
        return;
      }
      const Point w = q0 - e.p0;
      const double t = cross<double>(w, f) / denom;
      const double u = cross<double>(w, d) / denom;
      if (t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0) cuts.push_back(t);
    });
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] <= 0.0) continue;
      const Point mid = e.p0 + 0.5 * (cuts[k] + cuts[k + 1]) * d;
      if (!contains(b, mid)) continue;
      out.edges.push_back({e.p0 + cuts[k] * d, e.p0 + cuts[k + 1] * d, e.normal, e.multiplicity});
    }
  }
  return out;
}

Decomposition decompose_intersection(const PolygonalRegion& a, const PolygonalRegion& b,
                                     const Tolerance& tol, int joint_sign) {
  const TransversalityReport rep = transversality_check(a, b, tol);
  if (!rep) throw Error(ErrorKind::NonTransverse, rep.summary());
  Decomposition d;
  if (a.empty() || b.empty()) return d;
  d.piece_a = restrict_to_region(build_normal_cycle(a), b, tol);
  d.piece_b = restrict_to_region(build_normal_cycle(b), a, tol);
  for (const EdgeCrossing& c : boundary_crossings(a, b)) {
    const Loop& la = a.loops()[c.loop_a];
    const Loop& lb = b.loops()[c.loop_b];
    const Point ta = la[(c.edge_a + 1) % la.size()] - la[c.edge_a];
    const Point tb = lb[(c.edge_b + 1) % lb.size()] - lb[c.edge_b];
    const Direction xi(std::atan2(ta.y(), ta.x()) - kPi / 2);
    const Direction eta(std::atan2(tb.y(), tb.x()) - kPi / 2);
    const Direction start = cross<double>(ta, tb) > 0.0 ? xi : eta;
    const double sweep = std::abs(angle_difference(xi.angle(), eta.angle()));
    d.joint_arcs.push_back({c.where, {start, sweep, joint_sign}});
  }
  return d;
}

int calibrate_joint_arc_sign(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> shift(0.3, 0.7);
  const PolygonalRegion a = PolygonalRegion::box(0.0, 0.0, 1.0, 1.0);
  // A second unit square overlapping A's corner, tilted by a small seeded angle.
  for (;;) {
    const double tilt = 0.4 * (angle(rng) / kTwoPi - 0.5);
    const RigidMotion g{tilt, Point(shift(rng), shift(rng))};
    const PolygonalRegion b = apply_motion(g, a);
    if (!transversality_check(a, b)) continue;
    const CoefForm1 dtheta = lk0().beta;
    const Decomposition raw = decompose_intersection(a, b, {}, +1);
    const double joint = integrate_form(raw.joint_arcs, dtheta);
    if (std::abs(joint) < 1e-6) continue;
    const double direct = integrate_form(build_normal_cycle(intersect_regions(a, b)), dtheta);
    const double residual =
        direct - integrate_form(raw.piece_a, dtheta) - integrate_form(raw.piece_b, dtheta);
    return static_cast<int>(std::lround(residual / joint));
  }
}

std::string to_text(const NormalCycle& n) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const EdgePiece& e : n.edges) {
    os << "edge " << e.p0.x() << ' ' << e.p0.y() << ' ' << e.p1.x() << ' ' << e.p1.y()
       << " normal " << e.normal.angle() << " mult " << e.multiplicity << '\n';
  }
  for (const ArcPiece& a : n.arcs) {
    os << "arc " << a.base.x() << ' ' << a.base.y() << " start " << a.arc.start.angle() << " sweep "
       << a.arc.sweep << " mult " << a.arc.multiplicity << '\n';
  }
  return os.str();
}

}  // namespace kinval
