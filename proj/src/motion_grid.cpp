#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinval/kinematic.hpp"
#include "kinval/parallel.hpp"
#include "kinval/seeding.hpp"

namespace kinval {

EventGeometry event_geometry(const Shape& a) {
  EventGeometry ev;
  if (const auto* r = std::get_if<PolygonalRegion>(&a)) {
    r->for_each_edge([&](std::size_t, std::size_t, const Point& p0, const Point& p1) {
      ev.edges.push_back({p0, p1});
      ev.edge_angles.push_back(std::atan2(p1.y() - p0.y(), p1.x() - p0.x()));
    });
    for (const Loop& l : r->loops()) ev.vertices.insert(ev.vertices.end(), l.begin(), l.end());
    ev.support = r->bounding_box();
  } else {
    for (const Point& p : std::get<PointSet>(a).points) {
      ev.vertices.push_back(p);
      ev.support.extend(p);
    }
  }
  return ev;
}

EventGeometry event_geometry(const Shape& a, const PolygonalRegion& e) {
  EventGeometry ev = event_geometry(a);
  e.for_each_edge([&](std::size_t, std::size_t, const Point& p0, const Point& p1) {
    ev.edges.push_back({p0, p1});
    ev.edge_angles.push_back(std::atan2(p1.y() - p0.y(), p1.x() - p0.x()));
  });
  for (const Loop& l : e.loops()) ev.vertices.insert(ev.vertices.end(), l.begin(), l.end());
  if (const auto* r = std::get_if<PolygonalRegion>(&a)) {
    for (const EdgeCrossing& c : boundary_crossings(*r, e)) ev.vertices.push_back(c.where);
  }
  return ev;
}

namespace {

struct Segment {
  Point a, b;
};

struct AlphaNode {
  double alpha;
  double weight;
};

std::vector<AlphaNode> alpha_nodes(const MotionFamily& family, const EventGeometry& fixed,
                                   const PolygonalRegion& x) {
  std::vector<double> breaks;
  x.for_each_edge([&](std::size_t, std::size_t, const Point& p0, const Point& p1) {
    const double phi_x = std::atan2(p1.y() - p0.y(), p1.x() - p0.x());
    for (double phi_a : fixed.edge_angles) {
      const double b = wrap_angle(phi_a - phi_x);
      breaks.push_back(b);
      breaks.push_back(wrap_angle(b + kPi));
    }
  });
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> uniq;
  for (double b : breaks)
    if (uniq.empty() || b - uniq.back() > 1e-12) uniq.push_back(b);
  if (uniq.size() > 1 && uniq.front() + kTwoPi - uniq.back() <= 1e-12) uniq.pop_back();
  if (uniq.empty()) uniq.push_back(0.0);

  const int total = family.grid[0];
  std::vector<AlphaNode> nodes;
  for (std::size_t k = 0; k < uniq.size(); ++k) {
    const double lo = uniq[k];
    const double hi = k + 1 < uniq.size() ? uniq[k + 1] : uniq.front() + kTwoPi;
    const int n = std::max(3, static_cast<int>(std::lround(total * (hi - lo) / kTwoPi)));
    const GaussRule& rule = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
      nodes.push_back({0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.x[i], 0.5 * (hi - lo) * rule.w[i]});
    }
  }
  return nodes;
}

bool proper_crossing(const Segment& s, const Segment& t, double& x_out) {
  const Point d1 = s.b - s.a, d2 = t.b - t.a;
  const double denom = cross<double>(d1, d2);
  if (denom == 0.0) return false;
  const Point w = t.a - s.a;
  const double u = cross<double>(w, d2) / denom;
  const double v = cross<double>(w, d1) / denom;
  if (u <= 0.0 || u >= 1.0 || v <= 0.0 || v >= 1.0) return false;
  x_out = s.a.x() + u * d1.x();
  return true;
}

class AlphaSlice {
 public:
  AlphaSlice(const MotionFamily& family, const EventGeometry& fixed, const PolygonalRegion& x, double alpha,
             int dim, const MotionIntegrand& f, std::uint64_t node_seed)
      : family_(family), alpha_(alpha), dim_(dim), f_(f), seed_(node_seed) {
    const Eigen::Matrix2d rot = rotation(alpha);
    std::vector<Point> w;
    Eigen::AlignedBox2d xbox;
    for (const Loop& l : x.loops())
      for (std::size_t i = 0; i < l.size(); ++i) {
        const Point c = rot * l[i], d = rot * l[(i + 1) % l.size()];
        w.push_back(c);
        xbox.extend(c);
        for (const Point& v : fixed.vertices) segs_.push_back({v - c, v - d});
      }
    for (const auto& [a, b] : fixed.edges)
      for (const Point& c : w) segs_.push_back({a - c, b - c});
    const double r1 = family.plateau.r1;
    lo_ = (fixed.support.min() - xbox.max()).cwiseMax(Point(-r1, -r1));
    hi_ = (fixed.support.max() - xbox.min()).cwiseMin(Point(r1, r1));
  }

  Eigen::VectorXd integrate(long& nodes, int& perturbed, std::vector<std::string>& log) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(dim_);
    if (!(lo_.x() < hi_.x() && lo_.y() < hi_.y())) return total;
    std::vector<double> xs{lo_.x(), hi_.x()};
    auto add_break = [&](double v) {
      if (v > lo_.x() && v < hi_.x()) xs.push_back(v);
    };
    for (const Segment& s : segs_) {
      add_break(s.a.x());
      add_break(s.b.x());
    }
    for (std::size_t i = 0; i < segs_.size(); ++i)
      for (std::size_t j = i + 1; j < segs_.size(); ++j) {
        double cx;
        if (proper_crossing(segs_[i], segs_[j], cx)) add_break(cx);
      }
    std::sort(xs.begin(), xs.end());
    const double r0 = family_.plateau.r0, r1 = family_.plateau.r1;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      const double xl = xs[k], xr = xs[k + 1];
      if (xr - xl <= 1e-13) continue;
      const Point near(std::clamp(0.0, xl, xr), std::clamp(0.0, lo_.y(), hi_.y()));
      if (near.norm() >= r1) continue;
      const double far = std::hypot(std::max(std::abs(xl), std::abs(xr)), std::max(std::abs(lo_.y()), std::abs(hi_.y())));
      const bool plateau = far <= r0;
      std::vector<const Segment*> spanning;
      for (const Segment& s : segs_) {
        const double smin = std::min(s.a.x(), s.b.x()), smax = std::max(s.a.x(), s.b.x());
        if (smax - smin > 1e-13 && smin <= xl + 1e-13 && smax >= xr - 1e-13) spanning.push_back(&s);
      }
      const GaussRule& rx = gauss_legendre(plateau ? family_.plateau_order : family_.grid[1]);
      for (std::size_t i = 0; i < rx.x.size(); ++i) {
        const double tx = 0.5 * (xl + xr) + 0.5 * (xr - xl) * rx.x[i];
        const double wx = 0.5 * (xr - xl) * rx.w[i];
        std::vector<double> ys{lo_.y(), hi_.y()};
        for (const Segment* s : spanning) {
          const double u = (tx - s->a.x()) / (s->b.x() - s->a.x());
          const double y = s->a.y() + u * (s->b.y() - s->a.y());
          if (y > lo_.y() && y < hi_.y()) ys.push_back(y);
        }
        std::sort(ys.begin(), ys.end());
        for (std::size_t m = 0; m + 1 < ys.size(); ++m) {
          const double yl = ys[m], yh = ys[m + 1];
          if (yh - yl <= 1e-13) continue;
          const double ynear = std::clamp(0.0, yl, yh);
          if (std::hypot(tx, ynear) >= r1) continue;
          const bool flat = plateau || std::max(std::hypot(tx, yl), std::hypot(tx, yh)) <= r0;
          const GaussRule& ry = gauss_legendre(flat ? family_.plateau_order : family_.grid[2]);
          for (std::size_t j = 0; j < ry.x.size(); ++j) {
            const Point t(tx, 0.5 * (yl + yh) + 0.5 * (yh - yl) * ry.x[j]);
            const double rho = family_.density(t);
            if (rho == 0.0) continue;
            const double w = wx * 0.5 * (yh - yl) * ry.w[j] * rho;
            total += w * evaluate({alpha_, t}, nodes, perturbed, log);
          }
        }
      }
    }
    return total;
  }

 private:
  Eigen::VectorXd evaluate(const RigidMotion& g, long& nodes, int& perturbed, std::vector<std::string>& log) {
    const long id = nodes++;
    try {
      return f_(g);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonTransverse && e.kind() != ErrorKind::NonGeneric) throw;
    }
    std::uint64_t state = derive_seed(seed_, "nudge", static_cast<std::uint64_t>(id));
    for (int attempt = 1; attempt <= 3; ++attempt) {
      RigidMotion h = g;
      h.alpha += 1e-7 * (2 * uniform01(state) - 1);
      h.t += 1e-7 * Point(2 * uniform01(state) - 1, 2 * uniform01(state) - 1);
      std::ostringstream os;
      os.precision(17);
      os << "alpha=" << g.alpha << " t=(" << g.t.x() << "," << g.t.y() << ") attempt " << attempt;
      log.push_back(os.str());
      try {
        Eigen::VectorXd v = f_(h);
        ++perturbed;
        return v;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonTransverse && e.kind() != ErrorKind::NonGeneric) throw;
      }
    }
    throw Error(ErrorKind::NonTransverse, "node stayed non-transverse after 3 nudges");
  }

  const MotionFamily& family_;
  double alpha_;
  int dim_;
  const MotionIntegrand& f_;
  std::uint64_t seed_;
  std::vector<Segment> segs_;
  Point lo_, hi_;
};

struct SliceResult {
  Eigen::VectorXd value;
  long nodes = 0;
  int perturbed = 0;
  std::vector<std::string> log;
};

}  // namespace

GridOutcome integrate_over_motions(const MotionFamily& family, const EventGeometry& fixed,
                                   const PolygonalRegion& x, int dim, const MotionIntegrand& f) {
  const std::vector<AlphaNode> alphas = alpha_nodes(family, fixed, x);
  const std::vector<SliceResult> parts = parallel_map<SliceResult>(alphas.size(), [&](std::size_t i) {
    SliceResult r;
    AlphaSlice slice(family, fixed, x, alphas[i].alpha, dim, f, derive_seed(family.seed, "grid", i));
    r.value = alphas[i].weight * slice.integrate(r.nodes, r.perturbed, r.log);
    return r;
  });
  GridOutcome out;
  std::vector<Eigen::VectorXd> values;
  for (const SliceResult& r : parts) {
    values.push_back(r.value);
    out.nodes += r.nodes;
    out.perturbed += r.perturbed;
    out.nudge_log.insert(out.nudge_log.end(), r.log.begin(), r.log.end());
  }
  out.value = values.empty() ? Eigen::VectorXd::Zero(dim) : tree_sum(values);
  return out;
}

}  // namespace kinval
