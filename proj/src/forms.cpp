#include "kinval/forms.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace kinval {

double eval_valuation(const ValuationPair& mu, const PolygonalRegion& a, const QuadratureOptions& opt) {
  double total = integrate_form(build_normal_cycle(a), mu.beta, opt);
  if (!mu.gamma.zero && !a.empty()) {
    total += integrate_region([&](const Point& x) { return mu.gamma(x.x(), x.y()); }, a, opt);
  }
  return total;
}

double eval_valuation(const ValuationPair& mu, const PointSet& a, const QuadratureOptions& opt) {
  return integrate_form(build_normal_cycle(a), mu.beta, opt);
}

double eval_valuation(const ValuationPair& mu, const Shape& a, const QuadratureOptions& opt) {
  return std::visit([&](const auto& s) { return eval_valuation(mu, s, opt); }, a);
}

double curvature_measure(const ValuationPair& mu, const PolygonalRegion& a, const PolygonalRegion& e,
                         const QuadratureOptions& opt) {
  const TransversalityReport rep = transversality_check(a, e);
  if (!rep) throw Error(ErrorKind::NonGeneric, "localizing region is not transverse: " + rep.summary());
  double total = integrate_form(restrict_to_region(build_normal_cycle(a), e), mu.beta, opt);
  if (!mu.gamma.zero) {
    const PolygonalRegion ae = intersect_regions(a, e);
    if (!ae.empty()) {
      total += integrate_region([&](const Point& x) { return mu.gamma(x.x(), x.y()); }, ae, opt);
    }
  }
  return total;
}

double curvature_measure(const ValuationPair& mu, const Shape& a, const PolygonalRegion& e,
                         const QuadratureOptions& opt) {
  if (const auto* r = std::get_if<PolygonalRegion>(&a)) return curvature_measure(mu, *r, e, opt);
  const PointSet& p = std::get<PointSet>(a);
  const TransversalityReport rep = transversality_check(p, e);
  if (!rep) throw Error(ErrorKind::NonGeneric, "localizing region is not transverse: " + rep.summary());
  return integrate_form(restrict_to_region(build_normal_cycle(p), e), mu.beta, opt);
}

double point_function(const ValuationPair& mu, const Point& x, const QuadratureOptions& opt) {
  if (mu.beta.angular_zero) return 0.0;
  return integrate_adaptive([&](double th) { return mu.beta(x.x(), x.y(), th)(2); }, 0.0, kTwoPi, opt);
}

double reeb_decomposition_check(const FormField& beta, const std::vector<ContactPoint>& samples) {
  double worst = 0.0;
  for (const ContactPoint& s : samples) {
    const ExtForm<double> b = beta(s);
    const ExtForm<double> alpha = contact_form(s(2));
    const Eigen::Vector3d t = reeb_field(s(2));
    const ExtForm<double> rhs = wedge(alpha, interior(t, b)) + interior(t, wedge(alpha, b));
    worst = std::max(worst, (rhs - b).cwiseAbs().maxCoeff());
  }
  return worst;
}

double verticality_check(const CoefForm2& omega, const std::vector<ContactPoint>& samples) {
  double worst = 0.0;
  for (const ContactPoint& s : samples) {
    const ExtForm<double> top = wedge(contact_form(s(2)), omega.at(s(0), s(1), s(2)));
    worst = std::max(worst, std::abs(top(mask::top)));
  }
  return worst;
}

double closedness_check(const CoefForm2& omega, const std::vector<ContactPoint>& samples, double h) {
  double worst = 0.0;
  for (const ContactPoint& s : samples) {
    const double x = s(0), y = s(1), th = s(2);
    const double dp_dth = (omega(x, y, th + h)(0) - omega(x, y, th - h)(0)) / (2 * h);
    const double dq_dy = (omega(x, y + h, th)(1) - omega(x, y - h, th)(1)) / (2 * h);
    const double dr_dx = (omega(x + h, y, th)(2) - omega(x - h, y, th)(2)) / (2 * h);
    worst = std::max(worst, std::abs(dp_dth - dq_dy + dr_dx));
  }
  return worst;
}

Point AffineField::flow(double t, const Point& x) const {
  Eigen::Matrix3d gen = Eigen::Matrix3d::Zero();
  gen.topLeftCorner<2, 2>() = t * m;
  gen.topRightCorner<2, 1>() = t * b;
  const Eigen::Matrix3d e = gen.exp();
  return e.topLeftCorner<2, 2>() * x + e.topRightCorner<2, 1>();
}

PolygonalRegion flow_region(const AffineField& v, double t, const PolygonalRegion& a) {
  std::vector<Loop> loops = a.loops();
  for (Loop& l : loops)
    for (Point& p : l) p = v.flow(t, p);
  return PolygonalRegion::from_loops(std::move(loops));
}

double variation_rhs(const PolygonalRegion& a, const AffineField& v, const CoefForm2& candidate,
                     const QuadratureOptions& opt) {
  CoefForm1 contracted;
  contracted.name = "v⌐" + candidate.name;
  contracted.coeffs = [&](double x, double y, double th) {
    const Point vx = v(Point(x, y));
    const ExtForm<double> f = interior(Eigen::Vector3d(vx.x(), vx.y(), 0.0), candidate.at(x, y, th));
    return Eigen::Vector3d(f(mask::dx), f(mask::dy), f(mask::dtheta));
  };
  return integrate_form(build_normal_cycle(a), contracted, opt);
}

VariationResult variation_probe(const std::function<double(const PolygonalRegion&)>& mu,
                                const PolygonalRegion& a, const AffineField& v,
                                const CoefForm2& candidate, double h, const QuadratureOptions& opt,
                                double vert_tol) {
  VariationResult out;
  // Verticality along the pieces of N(A), where the horizontal lift is used.
  std::vector<ContactPoint> samples;
  const NormalCycle n = build_normal_cycle(a);
  for (const EdgePiece& e : n.edges)
    for (double s : {0.25, 0.5, 0.75}) {
      const Point x = e.p0 + s * (e.p1 - e.p0);
      samples.push_back({x.x(), x.y(), e.normal.angle()});
    }
  for (const ArcPiece& arc : n.arcs)
    for (double s : {0.25, 0.5, 0.75})
      samples.push_back({arc.base.x(), arc.base.y(), arc.arc.start.angle() + s * arc.arc.sweep});
  out.verticality = verticality_check(candidate, samples);
  if (out.verticality > vert_tol) {
    throw Error(ErrorKind::NonVertical, "candidate fails verticality: residual " + std::to_string(out.verticality));
  }
  out.lhs = (mu(flow_region(v, h, a)) - mu(flow_region(v, -h, a))) / (2.0 * h);
  out.rhs = variation_rhs(a, v, candidate, opt);
  return out;
}

}  // namespace kinval
