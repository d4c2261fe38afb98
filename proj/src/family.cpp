#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <random>

#include "kinval/kinematic.hpp"
#include "kinval/parallel.hpp"
#include "kinval/seeding.hpp"

namespace kinval {

namespace {

double bump_ratio(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

}  // namespace

double smooth_cutoff(double r, double r0, double r1) { return bump_ratio((r1 - r) / (r1 - r0)); }

double MotionFamily::profile_value(double r) const {
  if (profile == Profile::Indicator) return r < plateau.r1 ? 1.0 : 0.0;
  return smooth_cutoff(r, plateau.r0, plateau.r1);
}

double MotionFamily::density(double, const Point& t) const { return density(t); }

double MotionFamily::mass() const {
  const double r0 = plateau.r0, r1 = plateau.r1;
  double radial = 0.5 * r0 * r0;
  if (profile == Profile::Indicator) {
    radial = 0.5 * r1 * r1;
  } else {
    radial += integrate_adaptive([&](double r) { return profile_value(r) * r; }, r0, r1);
  }
  return plateau.c * kTwoPi * kTwoPi * radial;
}

AdmissibilityReport admissibility_check(const MotionFamily& family, int samples) {
  AdmissibilityReport rep;
  const Plateau& pl = family.plateau;
  if (!(pl.r1 > pl.r0) || pl.r0 < 0.0) {
    rep.support = false;
    rep.failures.push_back("plateau radii must satisfy 0 <= R0 < R1");
    return rep;
  }
  for (int i = 0; i <= 200; ++i) {
    const double outside = pl.r1 + 2.0 * i / 200.0;
    const double inside = pl.r0 * i / 200.0;
    if (family.density(Point(outside, 0.0)) != 0.0 || family.density(Point(inside, 0.0)) != pl.c) {
      rep.support = false;
    }
  }
  if (!rep.support) rep.failures.push_back("density is not c on the plateau and 0 beyond R1");

  // Jump detector: maximal increments over steps h and h/10 across the band.
  const double h = (pl.r1 - pl.r0) / 50.0;
  auto max_increment = [&](double step) {
    double worst = 0.0;
    for (double r = std::max(0.0, pl.r0 - 5 * h); r <= pl.r1 + 5 * h; r += step) {
      worst = std::max(worst, std::abs(family.profile_value(r + step) - family.profile_value(r)));
    }
    return worst;
  };
  const double coarse = max_increment(h);
  const double fine = max_increment(h / 10.0);
  rep.jump_ratio = coarse > 0.0 ? fine / coarse : 0.0;
  if (rep.jump_ratio > 0.5) {
    rep.smooth = false;
    rep.failures.push_back("density jumps across the transition band (increment ratio " +
                           std::to_string(rep.jump_ratio) + ")");
  }

  // Rank of p ↦ φ̃_p(ξ) = (R_α x + t, θ + α) at seeded (p, ξ).
  std::uint64_t state = derive_seed(family.seed, "admissibility");
  const double d = 1e-6;
  for (int k = 0; k < samples; ++k) {
    const double alpha = kTwoPi * uniform01(state);
    const Point t(pl.r1 * (2 * uniform01(state) - 1), pl.r1 * (2 * uniform01(state) - 1));
    const Point x(4 * uniform01(state) - 2, 4 * uniform01(state) - 2);
    const double theta = kTwoPi * uniform01(state);
    auto lift = [&](double a, const Point& tt) {
      const Point y = rotation(a) * x + tt;
      return Eigen::Vector3d(y.x(), y.y(), theta + a);
    };
    Eigen::MatrixXd jac(3, family.translations_only ? 2 : 3);
    int col = 0;
    if (!family.translations_only) jac.col(col++) = (lift(alpha + d, t) - lift(alpha - d, t)) / (2 * d);
    jac.col(col++) = (lift(alpha, t + Point(d, 0)) - lift(alpha, t - Point(d, 0))) / (2 * d);
    jac.col(col++) = (lift(alpha, t + Point(0, d)) - lift(alpha, t - Point(0, d))) / (2 * d);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    lu.setThreshold(1e-8);
    rep.min_rank = std::min(rep.min_rank, static_cast<int>(lu.rank()));
  }
  if (rep.min_rank < 3) {
    rep.submersive = false;
    rep.failures.push_back("lifted action is not a submersion (rank " + std::to_string(rep.min_rank) + ")");
  }
  return rep;
}

namespace {

double max_vertex_norm(const PolygonalRegion& x) {
  double r = 0.0;
  for (const Loop& l : x.loops())
    for (const Point& p : l) r = std::max(r, p.norm());
  return r;
}

double distance_origin_to_triangle(const Point& a, const Point& b, const Point& c) {
  const Point o = Point::Zero();
  const double s1 = cross<double>(b - a, o - a), s2 = cross<double>(c - b, o - b), s3 = cross<double>(a - c, o - c);
  if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) return 0.0;
  return std::min({distance_to_segment(o, a, b), distance_to_segment(o, b, c), distance_to_segment(o, c, a)});
}

// Periodic trapezoid rule with doubling; spectrally accurate for smooth periodic integrands.
template <typename F>
double integrate_periodic(F&& f, const QuadratureOptions& opt, int start = 32) {
  int n = start;
  double prev = 0.0, l1 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = f(kTwoPi * k / n);
    prev += v;
    l1 += std::abs(v);
  }
  prev *= kTwoPi / n;
  for (; n <= opt.max_panels * opt.nodes; n *= 2) {
    double odd = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = f(kTwoPi * (k + 0.5) / n);
      odd += v;
      l1 += std::abs(v);
    }
    const double cur = 0.5 * prev + odd * kTwoPi / (2 * n);
    const double scale = l1 * kTwoPi / (2 * n);
    if (std::abs(cur - prev) <= std::max(opt.rel_tol * scale, opt.abs_floor)) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureFailure, "periodic quadrature did not converge");
}

}  // namespace

PointFunctionEval::PointFunctionEval(MotionFamily family, PolygonalRegion x, QuadratureOptions opt)
    : family_(std::move(family)), x_(std::move(x)), triangles_(triangulate(x_)), opt_(opt) {
  radius_ = max_vertex_norm(x_);
  area_ = area_perimeter(x_).area;
}

double PointFunctionEval::exact(const Point& at) const {
  const Plateau& pl = family_.plateau;
  const double d = at.norm();
  if (d + radius_ <= pl.r0) return pl.c * kTwoPi * area_;
  if (d - radius_ >= pl.r1) return 0.0;
  auto slice = [&](double alpha) {
    const Eigen::Matrix2d r = rotation(alpha);
    double sum = 0.0;
    for (const Triangle& tri : triangles_) {
      const Point a = at - r * tri.a, b = at - r * tri.b, c = at - r * tri.c;
      if (std::max({a.norm(), b.norm(), c.norm()}) <= pl.r0) {
        sum += pl.c * tri.area();
      } else if (distance_origin_to_triangle(a, b, c) < pl.r1) {
        sum += integrate_triangle([&](const Point& t) { return family_.density(t); }, a, b, c, opt_);
      }
    }
    return sum;
  };
  return integrate_periodic(slice, opt_);
}

namespace {

constexpr int kTableNodes = 24;
constexpr int kTableMaxPanels = 256;

double cheb_node(const PointFunctionEval::Panel& p, int j) {
  return 0.5 * (p.lo + p.hi) + 0.5 * (p.hi - p.lo) * std::cos(kPi * j / kTableNodes);
}

// Barycentric interpolation on the second-kind Chebyshev points.
double cheb_eval(const PointFunctionEval::Panel& p, double r) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= kTableNodes; ++j) {
    const double d = r - cheb_node(p, j);
    if (d == 0.0) return p.values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == kTableNodes) w *= 0.5;
    num += w / d * p.values[j];
    den += w / d;
  }
  return num / den;
}

}  // namespace

const std::vector<PointFunctionEval::Panel>& PointFunctionEval::table() const {
  std::call_once(table_->once, [this] {
    const Plateau& pl = family_.plateau;
    const double lo = std::max(0.0, pl.r0 - radius_);
    const double hi = pl.r1 + radius_;
    const double scale = std::abs(pl.c) * kTwoPi * area_;
    // Relative to the panel's own magnitude, so the tail keeps its digits.
    auto tolerance = [&](const Panel& p) {
      double peak = 0.0;
      for (double v : p.values) peak = std::max(peak, std::abs(v));
      return std::max(1e-9 * peak, 1e-12 * scale);
    };
    auto radial = [&](double r) { return exact(Point(r, 0.0)); };
    auto build = [&](double a, double b) {
      Panel p{a, b, std::vector<double>(kTableNodes + 1)};
      for (int j = 0; j <= kTableNodes; ++j) p.values[j] = radial(cheb_node(p, j));
      return p;
    };
    std::vector<Panel> todo;
    for (int k = 3; k >= 0; --k) todo.push_back(build(lo + (hi - lo) * k / 4, lo + (hi - lo) * (k + 1) / 4));
    std::vector<Panel>& done = table_->panels;
    while (!todo.empty()) {
      Panel p = std::move(todo.back());
      todo.pop_back();
      double err = 0.0;
      for (double s : {0.137, 0.5, 0.863}) {
        const double r = p.lo + s * (p.hi - p.lo);
        err = std::max(err, std::abs(cheb_eval(p, r) - radial(r)));
      }
      if (err <= tolerance(p) || done.size() + todo.size() >= kTableMaxPanels) {
        table_->error = std::max(table_->error, err / std::max(scale, 1e-300));
        done.push_back(std::move(p));
        continue;
      }
      const double mid = 0.5 * (p.lo + p.hi);
      todo.push_back(build(mid, p.hi));
      todo.push_back(build(p.lo, mid));
    }
    std::sort(done.begin(), done.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  });
  return table_->panels;
}

double PointFunctionEval::table_error() const {
  table();
  return table_->error;
}

double PointFunctionEval::operator()(const Point& at) const {
  const Plateau& pl = family_.plateau;
  const double d = at.norm();
  if (d + radius_ <= pl.r0) return pl.c * kTwoPi * area_;
  if (d - radius_ >= pl.r1) return 0.0;
  const std::vector<Panel>& panels = table();
  auto it = std::upper_bound(panels.begin(), panels.end(), d, [](double r, const Panel& p) { return r < p.lo; });
  if (it != panels.begin()) --it;
  return cheb_eval(*it, d);
}

double point_function_f(const MotionFamily& family, const PolygonalRegion& x, const Point& at,
                        const QuadratureOptions& opt) {
  return PointFunctionEval(family, x, opt).exact(at);
}

SmoothedForm::SmoothedForm(MotionFamily family, PolygonalRegion x, QuadratureOptions opt)
    : family_(std::move(family)), x_(std::move(x)), cycle_(build_normal_cycle(x_)), opt_(opt) {
  radius_ = max_vertex_norm(x_);
}

Eigen::Vector3d SmoothedForm::evaluate_uncached(double x, double y, double theta) const {
  const Plateau& pl = family_.plateau;
  const Point at(x, y);
  double p = 0.0, w = 0.0;
  for (const EdgePiece& e : cycle_.edges) {
    // Motions carrying this edge to normal θ have α = θ − θ_e.
    const double alpha = theta - e.normal.angle();
    const Eigen::Matrix2d rot = rotation(alpha);
    const Point q0 = rot * e.p0, q1 = rot * e.p1;
    const double len = e.length();
    double value;
    if (std::max((at - q0).norm(), (at - q1).norm()) <= pl.r0) {
      value = pl.c * len;
    } else if (distance_to_segment(at, q0, q1) >= pl.r1) {
      value = 0.0;
    } else {
      value = len * integrate_adaptive(
                        [&](double s) { return family_.density(Point(at - (q0 + s * (q1 - q0)))); }, 0.0,
                        1.0, opt_);
    }
    w += e.multiplicity * value;
  }
  for (const ArcPiece& a : cycle_.arcs) {
    const double rv = a.base.norm();
    const double lo = theta - a.arc.start.angle() - a.arc.sweep;
    const double hi = theta - a.arc.start.angle();
    double value;
    if (at.norm() + rv <= pl.r0) {
      value = pl.c * a.arc.sweep;
    } else if (std::abs(at.norm() - rv) >= pl.r1) {
      value = 0.0;
    } else {
      value = integrate_adaptive(
          [&](double al) { return family_.density(Point(at - rotation(al) * a.base)); }, lo, hi, opt_);
    }
    p += a.arc.multiplicity * value;
  }
  return Eigen::Vector3d(p, -std::cos(theta) * w, -std::sin(theta) * w);
}

Eigen::Vector3d SmoothedForm::operator()(double x, double y, double theta) const {
  const std::array<double, 3> key{x, y, theta};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const Eigen::Vector3d v = evaluate_uncached(x, y, theta);
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(key, v);  // identical value if another thread got here first
  return v;
}

CoefForm2 SmoothedForm::as_form() const {
  return {"omega", [this](double x, double y, double th) { return (*this)(x, y, th); }};
}

std::size_t SmoothedForm::cache_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.size();
}

namespace {

bool convex_overlap(const std::vector<Point>& p, const std::vector<Point>& q) {
  auto separated = [](const std::vector<Point>& a, const std::vector<Point>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Point e = a[(i + 1) % a.size()] - a[i];
      const Point n(e.y(), -e.x());
      double amax = -1e300, bmin = 1e300;
      for (const Point& v : a) amax = std::max(amax, n.dot(v));
      for (const Point& v : b) bmin = std::min(bmin, n.dot(v));
      if (bmin > amax) return true;
    }
    return false;
  };
  return !separated(p, q) && !separated(q, p);
}

MonteCarloResult summarize(double sum, double sum_sq, long n) {
  MonteCarloResult r;
  r.samples = n;
  r.mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - r.mean * r.mean);
  r.stderr_ = std::sqrt(var / n);
  return r;
}

}  // namespace

MonteCarloResult kinematic_chi_monte_carlo(const MotionFamily& family, const PolygonalRegion& x,
                                           const PolygonalRegion& a, long samples, std::uint64_t seed) {
  if (x.loops().size() != 1 || a.loops().size() != 1) {
    throw Error(ErrorKind::InvalidRegion, "Monte Carlo oracle needs single-loop convex regions");
  }
  const std::vector<Point>& pa = a.loops().front();
  const std::vector<Point>& px = x.loops().front();
  const double r1 = family.plateau.r1;
  const double volume = kTwoPi * kPi * r1 * r1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Point> moved(px.size());
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < samples; ++i) {
    const double alpha = kTwoPi * u01(rng);
    const double r = r1 * std::sqrt(u01(rng));
    const double phi = kTwoPi * u01(rng);
    const Point t(r * std::cos(phi), r * std::sin(phi));
    const double rho = family.density(t);
    double v = 0.0;
    if (rho > 0.0) {
      const Eigen::Matrix2d rot = rotation(alpha);
      for (std::size_t k = 0; k < px.size(); ++k) moved[k] = rot * px[k] + t;
      if (convex_overlap(pa, moved)) v = volume * rho;
    }
    sum += v;
    sum_sq += v * v;
  }
  return summarize(sum, sum_sq, samples);
}

MonteCarloResult point_function_monte_carlo(const MotionFamily& family, const PolygonalRegion& x,
                                            const Point& at, long samples, std::uint64_t seed) {
  const double r1 = family.plateau.r1;
  const double volume = kTwoPi * kPi * r1 * r1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < samples; ++i) {
    const double alpha = kTwoPi * u01(rng);
    const double r = r1 * std::sqrt(u01(rng));
    const double phi = kTwoPi * u01(rng);
    const Point t(r * std::cos(phi), r * std::sin(phi));
    double v = 0.0;
    const double rho = family.density(t);
    if (rho > 0.0 && contains(x, rotation(-alpha) * (at - t))) v = volume * rho;
    sum += v;
    sum_sq += v * v;
  }
  return summarize(sum, sum_sq, samples);
}

PairingResult pairing_check(const MotionFamily& family, const PolygonalRegion& x, const SmoothedForm& omega,
                            const CoefForm1& tau, int n) {
  PairingResult out;
  const NormalCycle nx = build_normal_cycle(x);
  const Plateau& pl = family.plateau;
  const GaussRule& rule = gauss_legendre(n / 4 > 0 ? n / 4 : 1);
  // Radial nodes on [0, r0] and [r0, r1], 4 panels each.
  auto radial_nodes = [&](double lo, double hi, std::vector<double>& r, std::vector<double>& w) {
    const int panels = 4;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p)
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        r.push_back(lo + (p + 0.5) * h + 0.5 * h * rule.x[i]);
        w.push_back(0.5 * h * rule.w[i]);
      }
  };
  std::vector<double> rr, rw;
  radial_nodes(0.0, pl.r0, rr, rw);
  radial_nodes(pl.r0, pl.r1, rr, rw);

  // lhs: ∫ dα ∫ r dr dφ ρ(r) ∫_{g N(X)} τ.
  const std::vector<double> lhs_parts = parallel_map<double>(static_cast<std::size_t>(n), [&](std::size_t ia) {
    const double alpha = kTwoPi * static_cast<double>(ia) / n;
    double acc = 0.0;
    for (std::size_t k = 0; k < rr.size(); ++k) {
      const double rho = pl.c * family.profile_value(rr[k]);
      if (rho == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        const double phi = kTwoPi * j / n;
        const RigidMotion g{alpha, Point(rr[k] * std::cos(phi), rr[k] * std::sin(phi))};
        acc += rw[k] * rr[k] * (kTwoPi / n) * rho * integrate_form(act(g, nx), tau);
      }
    }
    return acc * kTwoPi / n;
  });
  out.lhs = tree_sum(lhs_parts);

  // rhs: ∫ over the disk of radius reach × circle of the top coefficient of ω∧τ.
  std::vector<double> sr, sw;
  radial_nodes(0.0, omega.reach(), sr, sw);
  const CoefForm2 w = omega.as_form();
  const std::vector<double> rhs_parts = parallel_map<double>(sr.size(), [&](std::size_t k) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = kTwoPi * j / n;
      const double px = sr[k] * std::cos(phi), py = sr[k] * std::sin(phi);
      for (int m = 0; m < n; ++m) {
        const double th = kTwoPi * m / n;
        const double top = wedge(w.at(px, py, th), tau.at(px, py, th))(mask::top);
        acc += top;
      }
    }
    return acc * sw[k] * sr[k] * (kTwoPi / n) * (kTwoPi / n);
  });
  out.rhs = tree_sum(rhs_parts);
  return out;
}

}  // namespace kinval
