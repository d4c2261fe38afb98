#include "kinval/kinematic.hpp"

namespace kinval {

double unfolded_bracket(const ValuationPair& mu, const Shape& a, const PolygonalRegion& gx,
                        const QuadratureOptions& opt) {
  if (const auto* r = std::get_if<PolygonalRegion>(&a)) {
    double total = integrate_form(decompose_intersection(*r, gx), mu.beta, opt);
    if (!mu.gamma.zero) {
      const PolygonalRegion both = intersect_regions(*r, gx);
      if (!both.empty()) {
        total += integrate_region([&](const Point& x) { return mu.gamma(x.x(), x.y()); }, both, opt);
      }
    }
    return total;
  }
  // A point set has no interior, so only the arcs over points inside gX remain.
  const PointSet& p = std::get<PointSet>(a);
  const TransversalityReport rep = transversality_check(p, gx);
  if (!rep) throw Error(ErrorKind::NonTransverse, rep.summary());
  return integrate_form(restrict_to_region(build_normal_cycle(p), gx), mu.beta, opt);
}

namespace {

KinematicResult run(const MotionFamily& family, const PolygonalRegion& x, const std::vector<ValuationPair>& mus,
                    const Shape& a, const QuadratureOptions& opt, bool direct, bool unfolded) {
  const int k = static_cast<int>(mus.size());
  const int dim = (direct ? k : 0) + (unfolded ? k : 0);
  const MotionIntegrand f = [&](const RigidMotion& g) {
    Eigen::VectorXd v(dim);
    const PolygonalRegion gx = apply_motion(g, x);
    int slot = 0;
    if (direct) {
      const Shape both = intersect_regions(a, gx);
      for (const ValuationPair& mu : mus) v(slot++) = eval_valuation(mu, both, opt);
    }
    if (unfolded) {
      for (const ValuationPair& mu : mus) v(slot++) = unfolded_bracket(mu, a, gx, opt);
    }
    return v;
  };
  const GridOutcome g = integrate_over_motions(family, event_geometry(a), x, dim, f);
  return {g.value, g.nodes, g.perturbed, g.nudge_log};
}

}  // namespace

KinematicResult kinematic_direct(const MotionFamily& family, const PolygonalRegion& x,
                                 const std::vector<ValuationPair>& mus, const Shape& a,
                                 const QuadratureOptions& opt) {
  return run(family, x, mus, a, opt, true, false);
}

KinematicResult kinematic_unfolded(const MotionFamily& family, const PolygonalRegion& x,
                                   const std::vector<ValuationPair>& mus, const Shape& a,
                                   const QuadratureOptions& opt) {
  return run(family, x, mus, a, opt, false, true);
}

KinematicResult kinematic_direct_and_unfolded(const MotionFamily& family, const PolygonalRegion& x,
                                              const std::vector<ValuationPair>& mus, const Shape& a,
                                              const QuadratureOptions& opt) {
  return run(family, x, mus, a, opt, true, true);
}

}  // namespace kinval
