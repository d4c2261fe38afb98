#include "kinval/sigma.hpp"

#include <cmath>

#include "kinval/seeding.hpp"

namespace kinval {

double interpolation_integral(const NormalCycle& n, const CoefForm1& beta, const CoefForm2& omega,
                              const SigmaOptions& opt, int orientation) {
  // Arc pieces have no spatial tangent, so both pullbacks are purely angular
  // and the 3-form vanishes; a β without dθ part gives no dr component.
  if (beta.angular_zero) return 0.0;
  constexpr int kParity = 1;  // (−1)ⁿ with n = 2
  double total = 0.0;
  for (const EdgePiece& e : n.edges) {
    const Point tangent = e.tangent();
    const double len = e.length();
    const double th = e.normal.angle();
    for (int sheet : {+1, -1}) {
      auto at_s = [&](double s) {
        const Point x = e.p0 + s * len * tangent;
        auto at_t = [&](double tt) {
          Frame3<double> jeta = Frame3<double>::Zero();
          jeta(0, 0) = tangent.x();
          jeta(1, 0) = tangent.y();
          jeta(2, 1) = sheet;
          const ExtForm<double> eta_omega = pullback(jeta, omega.at(x.x(), x.y(), th + sheet * tt));
          auto at_r = [&](double r) {
            Frame3<double> jzeta = Frame3<double>::Zero();
            jzeta(0, 0) = tangent.x();
            jzeta(1, 0) = tangent.y();
            jzeta(2, 1) = sheet * r;
            jzeta(2, 2) = sheet * tt;
            const ExtForm<double> zeta_beta = pullback(jzeta, beta.at(x.x(), x.y(), th + sheet * r * tt));
            return wedge(eta_omega, zeta_beta)(mask::top);
          };
          return integrate_adaptive(at_r, 0.0, 1.0, opt.inner);
        };
        return integrate_adaptive(at_t, 0.0, kPi, opt.inner);
      };
      // The chart (s, t̃, r) carries orientation −sheet relative to ξ⁻¹N(A).
      total += -sheet * e.multiplicity * len * integrate_adaptive(at_s, 0.0, 1.0, opt.outer);
    }
  }
  return kParity * orientation * total;
}

namespace {

template <typename F>
double periodic_theta(F&& f, const QuadratureOptions& opt) {
  int n = 32;
  double prev = 0.0, l1 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = f(kTwoPi * k / n);
    prev += v;
    l1 += std::abs(v);
  }
  prev *= kTwoPi / n;
  for (; n <= 1 << 14; n *= 2) {
    double odd = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = f(kTwoPi * (k + 0.5) / n);
      odd += v;
      l1 += std::abs(v);
    }
    const double cur = 0.5 * prev + odd * kTwoPi / (2 * n);
    if (std::abs(cur - prev) <= std::max(opt.rel_tol * l1 * kTwoPi / (2 * n), opt.abs_floor)) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureFailure, "fiber quadrature did not converge");
}

}  // namespace

double pushdown_integral(const PolygonalRegion& a, const CoefForm1& beta, const CoefForm2& omega,
                         const SigmaOptions& opt) {
  if (a.empty() || beta.is_zero()) return 0.0;
  auto fiber = [&](const Point& x) {
    return periodic_theta(
        [&](double th) { return wedge(beta.at(x.x(), x.y(), th), omega.at(x.x(), x.y(), th))(mask::top); },
        opt.inner);
  };
  return integrate_region(fiber, a, opt.outer);
}

ThetaPsiResult kinematic_forms(const SmoothedForm& omega, const PointFunctionEval& f, const ValuationPair& mu,
                               const Shape& a, const std::optional<PolygonalRegion>& e, const SigmaOptions& opt) {
  ThetaPsiResult out;
  NormalCycle n = build_normal_cycle(a);
  if (e) n = restrict_to_region(n, *e);
  const CoefForm2 w = omega.as_form();
  out.term1 = interpolation_integral(n, mu.beta, w, opt);

  // term2: f depends on the base point only.
  if (!mu.beta.spatial_zero) {
    for (const EdgePiece& piece : n.edges) {
      const CoefForm1 scaled = scale_form(mu.beta, [&](double x, double y, double) { return f(Point(x, y)); });
      out.term2 += integrate_form(piece, scaled, opt.outer);
    }
  }
  for (const ArcPiece& arc : n.arcs) {
    const double v = integrate_form(arc, mu.beta, opt.inner);
    if (v != 0.0) out.term2 += f(arc.base) * v;
  }

  if (const auto* region = std::get_if<PolygonalRegion>(&a)) {
    const PolygonalRegion dom = e ? intersect_regions(*region, *e) : *region;
    out.term3 = pushdown_integral(dom, mu.beta, w, opt);
    if (!mu.gamma.zero && !dom.empty()) {
      out.term4 = integrate_region([&](const Point& x) { return f(x) * mu.gamma(x.x(), x.y()); }, dom, opt.outer);
    }
  }
  return out;
}

ThetaPsiResult kinematic_forms(const MotionFamily& family, const PolygonalRegion& x, const ValuationPair& mu,
                               const Shape& a, const SigmaOptions& opt) {
  const SmoothedForm omega(family, x);
  const PointFunctionEval f(family, x);
  return kinematic_forms(omega, f, mu, a, std::nullopt, opt);
}

ProductResult product_check(const MotionFamily& family, const PolygonalRegion& x, const ValuationPair& phi,
                            const PolygonalRegion& a, const PolygonalRegion& e, const SmoothedForm& omega,
                            const PointFunctionEval& f, const SigmaOptions& opt) {
  ProductResult out;
  out.forms = kinematic_forms(omega, f, phi, a, e, opt);
  out.lhs = out.forms.total();
  const MotionIntegrand integrand = [&](const RigidMotion& g) {
    const PolygonalRegion gx = apply_motion(g, x);
    const PolygonalRegion both = intersect_regions(a, gx);
    Eigen::VectorXd v(1);
    v(0) = both.empty() ? 0.0 : curvature_measure(phi, both, e);
    return v;
  };
  const GridOutcome g = integrate_over_motions(family, event_geometry(a, e), x, 1, integrand);
  out.rhs = g.value(0);
  out.nodes = g.nodes;
  out.perturbed = g.perturbed;
  return out;
}

int calibrate_sigma_orientation(std::uint64_t seed) {
  std::uint64_t state = derive_seed(seed, "sigma-calibration");
  const double side = 0.6 + 0.8 * uniform01(state);
  const double tilt = kTwoPi * uniform01(state);
  const PolygonalRegion a = PolygonalRegion::box(0.0, 0.0, 1.0, 1.0);
  const PolygonalRegion x = apply_motion(RigidMotion{tilt, Point::Zero()},
                                         PolygonalRegion::box(-side / 2, -side / 2, side / 2, side / 2));
  MotionFamily family;
  family.plateau = {3.0, 4.0, 1.0};
  family.grid = {8, 2, 2};
  family.seed = seed;
  const CoefForm1 dtheta = lk0().beta;
  const SmoothedForm omega(family, x);
  const double raw = interpolation_integral(build_normal_cycle(a), dtheta, omega.as_form(), {}, +1);
  const MotionIntegrand joint = [&](const RigidMotion& g) {
    Eigen::VectorXd v(1);
    v(0) = integrate_form(decompose_intersection(a, apply_motion(g, x)).joint_arcs, dtheta);
    return v;
  };
  const double unfolded = integrate_over_motions(family, event_geometry(Shape(a)), x, 1, joint).value(0);
  return static_cast<int>(std::lround(unfolded / raw));
}

}  // namespace kinval
