#include "kinval/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "kinval/fixtures.hpp"
#include "kinval/morse.hpp"
#include "kinval/report.hpp"
#include "kinval/scene.hpp"
#include "kinval/seeding.hpp"
#include "kinval/sigma.hpp"

namespace kinval {

using nlohmann::json;

namespace {

struct Options {
  std::string subcommand;
  std::string check;
  std::string scene_path;
  std::string out;
  std::string method = "combinatorial";
  std::string mode = "direct";
  std::string shape;
  std::string direction;
  std::string grid;
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
  long mc_samples = 1000000;
};

struct Session {
  Options opt;
  std::optional<Scene> scene;
  std::uint64_t seed = 0;
  QuadratureOptions quad;
  VerificationReport report;
  std::ostream& out;
};

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::SceneError, flag + ": cannot parse '" + item + "'");
    }
  }
  if (v.size() != expected) {
    throw Error(ErrorKind::SceneError, flag + " expects " + std::to_string(expected) + " comma-separated numbers");
  }
  return v;
}

SigmaOptions sigma_options(const QuadratureOptions& q) {
  SigmaOptions o;
  o.inner = q;
  o.outer = q;
  o.outer.rel_tol = std::max(q.rel_tol, 1e-8);
  return o;
}

json family_json(const MotionFamily& f) {
  return {{"plateau", {{"R0", f.plateau.r0}, {"R1", f.plateau.r1}, {"c", f.plateau.c}}},
          {"grid", f.grid},
          {"profile", f.profile == Profile::Indicator ? "indicator" : "smooth"},
          {"seed", f.seed}};
}

bool has_reflex_corner(const PolygonalRegion& a) {
  for (const ArcPiece& arc : build_normal_cycle(a).arcs)
    if (arc.arc.multiplicity < 0) return true;
  return false;
}

bool is_convex(const PolygonalRegion& a) { return a.loops().size() == 1 && !has_reflex_corner(a); }

double outer_radius(const PolygonalRegion& a) {
  double r = 0.0;
  for (const Loop& l : a.loops())
    for (const Point& p : l) r = std::max(r, p.norm());
  return r;
}

void flag_reflex(Session& s, const std::string& name, const Shape& shape) {
  if (const auto* r = std::get_if<PolygonalRegion>(&shape); r && has_reflex_corner(*r)) {
    s.report.flags.push_back("shape '" + name + "' has reflex corners; treated as an additivity-generated extension");
  }
}

Shape lookup_shape(const Session& s, const std::string& name) {
  if (s.scene && s.scene->shapes.count(name)) return s.scene->shape(name);
  return builtin_shape(name);
}

std::vector<std::pair<std::string, Shape>> selected_shapes(const Session& s) {
  std::vector<std::pair<std::string, Shape>> out;
  if (!s.opt.shape.empty()) {
    out.emplace_back(s.opt.shape, lookup_shape(s, s.opt.shape));
  } else if (s.scene) {
    for (const auto& [name, shape] : s.scene->shapes) out.emplace_back(name, shape);
  } else {
    throw Error(ErrorKind::SceneError, "give --shape or --scene");
  }
  return out;
}

struct Setup {
  std::string a_name;
  std::string x_name;
  Shape a;
  PolygonalRegion x;
  MotionFamily family;
  ValuationPair mu;
  std::optional<PolygonalRegion> e;
  std::optional<ValuationPair> phi;
};

Setup kinematic_setup(Session& s) {
  if (!s.scene || !s.scene->kinematic) {
    throw Error(ErrorKind::SceneError, "this subcommand needs a scene with a 'kinematic' block");
  }
  const Scene& sc = *s.scene;
  const KinematicSpec& k = *sc.kinematic;
  Setup out{k.a, k.x, sc.shape(k.a), sc.region(k.x), sc.family(k.family), sc.valuation(k.valuation), {}, {}};
  if (k.e) out.e = sc.region(*k.e);
  if (k.measure) out.phi = sc.valuation(*k.measure);
  if (!s.opt.grid.empty()) {
    const std::vector<double> g = split_numbers(s.opt.grid, 3, "--grid");
    for (int i = 0; i < 3; ++i) {
      out.family.grid[i] = static_cast<int>(g[i]);
      if (out.family.grid[i] < 1) throw Error(ErrorKind::SceneError, "--grid entries must be positive");
    }
  }
  flag_reflex(s, out.a_name, out.a);
  flag_reflex(s, out.x_name, out.x);
  const AdmissibilityReport adm = admissibility_check(out.family);
  for (const std::string& f : adm.failures) s.report.flags.push_back("family '" + k.family + "': " + f);
  s.report.settings["family"] = family_json(out.family);
  s.report.settings["kinematic"] = {{"A", k.a}, {"X", k.x}, {"family", k.family}, {"valuation", k.valuation}};
  return out;
}

// Retries `f` under a seeded rigid perturbation of size 10·tol when the
// configuration is not transverse.
template <typename F>
auto with_perturbation(Session& s, const std::string& label, F&& f) {
  RigidMotion p = RigidMotion::identity();
  for (int attempt = 0;; ++attempt) {
    try {
      return f(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonTransverse || attempt == 3) throw;
      std::uint64_t state = derive_seed(s.seed, "perturbation:" + label, static_cast<std::uint64_t>(attempt));
      const double mag = 10.0 * s.opt.tol;
      const double dir = kTwoPi * uniform01(state);
      p = RigidMotion{mag * (2.0 * uniform01(state) - 1.0), mag * unit_vector(dir)}.compose(p);
      std::ostringstream os;
      os.precision(17);
      os << label << ": attempt " << attempt + 1 << " perturbed by alpha=" << p.alpha << " t=(" << p.t.x() << ", "
         << p.t.y() << ") after " << e.what();
      s.report.perturbations.push_back(os.str());
    }
  }
}

// Motions that place B over A with a seeded rotation and offset.
std::vector<RigidMotion> overlapping_motions(const PolygonalRegion& a, const PolygonalRegion& b, std::uint64_t seed,
                                             int count) {
  const Eigen::AlignedBox2d ba = a.bounding_box();
  const Eigen::AlignedBox2d bb = b.bounding_box();
  const Point ca = ba.center();
  const Point cb = bb.center();
  const Point half = 0.3 * ba.sizes();
  std::vector<RigidMotion> out;
  out.push_back(RigidMotion::identity());
  std::uint64_t state = seed;
  for (int i = 1; i < count; ++i) {
    const double alpha = kTwoPi * uniform01(state);
    const Point d((2.0 * uniform01(state) - 1.0) * half.x(), (2.0 * uniform01(state) - 1.0) * half.y());
    out.push_back({alpha, ca + d - rotation(alpha) * cb});
  }
  return out;
}

std::vector<std::pair<std::string, ValuationPair>> scene_forms(const Session& s,
                                                                std::vector<std::pair<std::string, ValuationPair>> base) {
  if (s.scene)
    for (const auto& [name, spec] : s.scene->forms) base.emplace_back(name, spec.resolve());
  return base;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void cmd_intrinsic(Session& s) {
  for (const auto& [name, shape] : selected_shapes(s)) {
    flag_reflex(s, name, shape);
    const double v0 = eval_valuation(lk0(), shape, s.quad);
    const double v1 = eval_valuation(lk1(), shape, s.quad);
    const double v2 = eval_valuation(lk2(), shape, s.quad);
    double chi = euler_combinatorial(shape), half_perimeter = 0.0, area = 0.0;
    if (const auto* r = std::get_if<PolygonalRegion>(&shape)) {
      const AreaPerimeter ap = area_perimeter(*r);
      half_perimeter = ap.perimeter / 2.0;
      area = ap.area;
    }
    s.report.add(make_check(name + ":V0", v0, chi, 1e-9, 1.0));
    s.report.add(make_check(name + ":V1", v1, half_perimeter, 1e-9, 1.0));
    s.report.add(make_check(name + ":V2", v2, area, 1e-9, 1.0));
    s.report.results[name] = {{"V0", v0}, {"V1", v1}, {"V2", v2}};
    s.out << name << " V0=" << fmt(v0) << " V1=" << fmt(v1) << " V2=" << fmt(v2) << "\n";
  }
}

Point morse_direction(const Session& s) {
  if (!s.opt.direction.empty()) {
    const std::vector<double> d = split_numbers(s.opt.direction, 2, "--direction");
    const Point u(d[0], d[1]);
    if (u.norm() == 0.0) throw Error(ErrorKind::SceneError, "--direction must be nonzero");
    return u;
  }
  std::uint64_t state = derive_seed(s.seed, "morse-direction");
  return unit_vector(kTwoPi * uniform01(state));
}

void cmd_euler(Session& s) {
  const std::string& m = s.opt.method;
  if (m != "combinatorial" && m != "cycle" && m != "morse") {
    throw Error(ErrorKind::SceneError, "--method must be combinatorial, cycle or morse");
  }
  s.report.settings["method"] = m;
  for (const auto& [name, shape] : selected_shapes(s)) {
    const int combinatorial = euler_combinatorial(shape);
    double value = combinatorial;
    if (m == "cycle") {
      value = turning(build_normal_cycle(shape)) / kTwoPi;
    } else if (m == "morse") {
      const auto* r = std::get_if<PolygonalRegion>(&shape);
      if (!r) throw Error(ErrorKind::SceneError, "the morse method needs a polygonal region");
      const Point u = morse_direction(s);
      s.report.settings["direction"] = {u.x(), u.y()};
      value = euler_via_morse(MorseFunction::affine(u), *r);
    }
    if (m != "combinatorial") s.report.add(make_check(name + ":chi", value, combinatorial, 1e-9, 1.0));
    s.report.results[name] = value;
    s.out << name << " chi=" << fmt(value) << "\n";
  }
}

void cmd_dump_cycle(Session& s) {
  for (const auto& [name, shape] : selected_shapes(s)) {
    const std::string text = to_text(build_normal_cycle(shape));
    s.report.results[name] = text;
    s.out << "# " << name << "\n" << text;
    if (!text.empty() && text.back() != '\n') s.out << "\n";
  }
}

void record_grid(Session& s, long nodes, int perturbed, const std::vector<std::string>& log) {
  s.report.results["grid_nodes"] = nodes;
  s.report.results["perturbed_nodes"] = perturbed;
  for (const std::string& l : log) s.report.perturbations.push_back(l);
}

json terms_json(const ThetaPsiResult& t) {
  return {{"term1", t.term1}, {"term2", t.term2}, {"term3", t.term3}, {"term4", t.term4}, {"total", t.total()}};
}

void cmd_kinematic(Session& s) {
  const std::string& mode = s.opt.mode;
  if (mode != "direct" && mode != "unfolded" && mode != "forms") {
    throw Error(ErrorKind::SceneError, "--mode must be direct, unfolded or forms");
  }
  const Setup k = kinematic_setup(s);
  s.report.settings["mode"] = mode;
  double value = 0.0;
  if (mode == "forms") {
    const SmoothedForm omega(k.family, k.x, s.quad);
    const PointFunctionEval f(k.family, k.x, s.quad);
    const ThetaPsiResult t = kinematic_forms(omega, f, k.mu, k.a, k.e, sigma_options(s.quad));
    s.report.results["terms"] = terms_json(t);
    value = t.total();
  } else {
    if (k.e) s.report.flags.push_back("localizing region E is only used by the forms route");
    const KinematicResult r = mode == "direct" ? kinematic_direct(k.family, k.x, {k.mu}, k.a, s.quad)
                                               : kinematic_unfolded(k.family, k.x, {k.mu}, k.a, s.quad);
    record_grid(s, r.nodes, r.perturbed, r.nudge_log);
    value = r.values(0);
  }
  s.report.results["value"] = value;
  s.out << k.mu.name << " " << mode << " = " << fmt(value) << "\n";
}

void check_pkf(Session& s) {
  Setup k = kinematic_setup(s);
  const auto* a = std::get_if<PolygonalRegion>(&k.a);
  if (!a) throw Error(ErrorKind::SceneError, "pkf needs a polygonal A");
  const KinematicResult r = kinematic_direct(k.family, k.x, {lk0()}, k.a, s.quad);
  record_grid(s, r.nodes, r.perturbed, r.nudge_log);
  const double direct = r.values(0);
  s.report.results["direct"] = direct;
  s.out << "direct chi = " << fmt(direct) << "\n";

  if (outer_radius(*a) + outer_radius(k.x) <= k.family.plateau.r0) {
    const AreaPerimeter pa = area_perimeter(*a), px = area_perimeter(k.x);
    const double classical = k.family.plateau.c * (kTwoPi * (pa.area * euler_combinatorial(k.x) +
                                                             px.area * euler_combinatorial(*a)) +
                                                   pa.perimeter * px.perimeter);
    s.report.add(make_check("pkf:classical", direct, classical, 1e-3));
    s.out << "classical = " << fmt(classical) << "\n";
  } else {
    s.report.flags.push_back("plateau does not cover every hitting motion; classical formula skipped");
  }
  if (s.opt.mc_samples > 0) {
    if (is_convex(*a) && is_convex(k.x)) {
      const MonteCarloResult mc =
          kinematic_chi_monte_carlo(k.family, k.x, *a, s.opt.mc_samples, derive_seed(s.seed, "pkf-monte-carlo"));
      s.report.results["monte_carlo"] = {{"mean", mc.mean}, {"stderr", mc.stderr_}, {"samples", mc.samples}};
      const double tol = 3.0 * mc.stderr_ / std::max(std::abs(mc.mean), 1e-6);
      s.report.add(make_check("pkf:monte_carlo_3sigma", direct, mc.mean, tol));
      s.out << "monte carlo = " << fmt(mc.mean) << " +- " << fmt(mc.stderr_) << "\n";
    } else {
      s.report.flags.push_back("Monte Carlo oracle needs convex single-loop A and X; skipped");
    }
  }
}

constexpr int kCheckMotions = 10;

void check_decomposition(Session& s) {
  const Setup k = kinematic_setup(s);
  const PolygonalRegion& a = s.scene->region(k.a_name);
  const auto forms = scene_forms(s, {{"chi", lk0()}, {"V1", lk1()}});
  const auto motions = overlapping_motions(a, k.x, derive_seed(s.seed, "decomposition-motions"), kCheckMotions);
  for (std::size_t i = 0; i < motions.size(); ++i) {
    const std::string label = "decomposition:" + std::to_string(i);
    with_perturbation(s, label, [&](const RigidMotion& p) {
      const PolygonalRegion gb = apply_motion(p.compose(motions[i]), k.x);
      const PolygonalRegion both = intersect_regions(a, gb);
      const Decomposition d = decompose_intersection(a, gb);
      const NormalCycle n = build_normal_cycle(both);
      for (const auto& [name, mu] : forms) {
        const double direct = integrate_form(n, mu.beta, s.quad);
        const double pieces = integrate_form(d, mu.beta, s.quad);
        s.report.add(make_check(label + ":" + name, pieces, direct, 1e-8));
      }
      return 0;
    });
  }
  const int sign = calibrate_joint_arc_sign(s.seed);
  s.report.add(make_check("joint_arc_sign_calibration", sign, kJointArcSign, 0.0, 1.0));
}

void check_additivity(Session& s) {
  const Setup k = kinematic_setup(s);
  const PolygonalRegion& a = s.scene->region(k.a_name);
  const auto forms = scene_forms(s, {{"chi", lk0()}, {"V1", lk1()}, {"V2", lk2()}});
  const auto motions = overlapping_motions(a, k.x, derive_seed(s.seed, "additivity-motions"), kCheckMotions);
  for (std::size_t i = 0; i < motions.size(); ++i) {
    const std::string label = "additivity:" + std::to_string(i);
    with_perturbation(s, label, [&](const RigidMotion& p) {
      const PolygonalRegion gb = apply_motion(p.compose(motions[i]), k.x);
      const PolygonalRegion both = intersect_regions(a, gb);
      const PolygonalRegion either = union_regions(a, gb);
      for (const auto& [name, mu] : forms) {
        const double lhs = eval_valuation(mu, either, s.quad) + eval_valuation(mu, both, s.quad);
        const double rhs = eval_valuation(mu, a, s.quad) + eval_valuation(mu, gb, s.quad);
        s.report.add(make_check(label + ":" + name, lhs, rhs, 1e-9, 1.0));
      }
      return 0;
    });
  }
}

std::vector<ContactPoint> contact_samples(std::uint64_t seed, double radius, int count) {
  std::vector<ContactPoint> out;
  std::uint64_t state = seed;
  for (int i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(uniform01(state));
    const double phi = kTwoPi * uniform01(state);
    const double th = kTwoPi * uniform01(state);
    out.push_back({r * std::cos(phi), r * std::sin(phi), th});
  }
  return out;
}

void check_omega(Session& s) {
  const Setup k = kinematic_setup(s);
  const SmoothedForm omega(k.family, k.x, s.quad);
  const CoefForm2 w = omega.as_form();
  const auto samples = contact_samples(derive_seed(s.seed, "omega-samples"), omega.reach(), 100);
  const double vert = verticality_check(w, samples);
  const double closed = closedness_check(w, samples, 1e-3);
  s.report.add(make_check("omega:verticality", vert, 0.0, 1e-6, 1.0));
  s.report.add(make_check("omega:closedness", closed, 0.0, 1e-4, 1.0));
  s.out << "verticality residual = " << fmt(vert) << "\nclosedness residual = " << fmt(closed) << "\n";

  std::vector<std::pair<std::string, CoefForm1>> taus{{"chi", lk0().beta}, {"V1", lk1().beta}};
  for (int i = 0; i < 3; ++i) {
    taus.emplace_back("poly_trig" + std::to_string(i),
                      poly_trig(random_poly_trig_params(derive_seed(s.seed, "pairing-forms"), i, false)).beta);
  }
  for (const auto& [name, tau] : taus) {
    const PairingResult p = pairing_check(k.family, k.x, omega, tau);
    s.report.add(make_check("omega:pairing:" + name, p.lhs, p.rhs, 1e-3));
    s.out << "pairing " << name << ": " << fmt(p.lhs) << " vs " << fmt(p.rhs) << "\n";
  }
}

void check_variation(Session& s) {
  const Setup k = kinematic_setup(s);
  const PolygonalRegion& a = s.scene->region(k.a_name);
  const SmoothedForm omega(k.family, k.x, s.quad);
  const CoefForm2 candidate = antipodal_pullback(omega.as_form());
  auto nu = [&](const PolygonalRegion& r) { return kinematic_direct(k.family, k.x, {lk0()}, r, s.quad).values(0); };
  std::uint64_t state = derive_seed(s.seed, "variation-fields");
  const Eigen::AlignedBox2d box = a.bounding_box();
  const Point v(2.0 * uniform01(state) - 1.0, 2.0 * uniform01(state) - 1.0);
  const Point center = box.min() + Point(uniform01(state), uniform01(state)).cwiseProduct(box.sizes());
  const std::vector<std::pair<std::string, AffineField>> fields{{"translation", AffineField::translation(v)},
                                                                {"dilation", AffineField::dilation(center)}};
  for (const auto& [name, field] : fields) {
    try {
      const VariationResult r = variation_probe(nu, a, field, candidate, 1e-2, s.quad);
      s.report.add(make_check("variation:" + name, r.lhs, r.rhs, 1e-3));
      s.out << "variation " << name << ": " << fmt(r.lhs) << " vs " << fmt(r.rhs) << "\n";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonVertical) throw;
      s.report.add(make_check("variation:" + name + ":verticality", 1.0, 0.0, 1e-6, 1.0));
      s.report.flags.push_back(e.what());
    }
  }
}

void check_product(Session& s) {
  const Setup k = kinematic_setup(s);
  if (!k.e) throw Error(ErrorKind::SceneError, "product check needs kinematic.E");
  const PolygonalRegion& a = s.scene->region(k.a_name);
  const ValuationPair phi = k.phi ? *k.phi : lk1();
  const SmoothedForm omega(k.family, k.x, s.quad);
  const PointFunctionEval f(k.family, k.x, s.quad);
  const ProductResult r = product_check(k.family, k.x, phi, a, *k.e, omega, f, sigma_options(s.quad));
  record_grid(s, r.nodes, r.perturbed, {});
  s.report.results["terms"] = terms_json(r.forms);
  s.report.add(make_check("product:" + phi.name, r.lhs, r.rhs, 1e-3));
  s.out << "product " << phi.name << ": forms " << fmt(r.lhs) << " vs direct " << fmt(r.rhs) << "\n";
  const int sign = calibrate_sigma_orientation(s.seed);
  s.report.add(make_check("sigma_orientation_calibration", sign, kSigmaOrientation, 0.0, 1.0));
}

void check_pointfn(Session& s) {
  const Setup k = kinematic_setup(s);
  const SmoothedForm omega(k.family, k.x, s.quad);
  const PointFunctionEval f(k.family, k.x, s.quad);
  std::uint64_t state = derive_seed(s.seed, "pointfn-points");
  const double radius = outer_radius(k.x) + k.family.plateau.r1;
  for (int i = 0; i < 20; ++i) {
    const double r = radius * std::sqrt(uniform01(state));
    const double phi = kTwoPi * uniform01(state);
    const Point p(r * std::cos(phi), r * std::sin(phi));
    const double forms = kinematic_forms(omega, f, lk0(), Shape(PointSet{{p}}), std::nullopt, sigma_options(s.quad)).total();
    const double direct = point_function_f(k.family, k.x, p, s.quad);
    s.report.add(make_check("pointfn:" + std::to_string(i), forms, direct, 1e-3));
  }
  s.out << "pointfn: " << s.report.checks.size() << " points\n";
}

void check_forms(Session& s) {
  const Setup k = kinematic_setup(s);
  const std::vector<ValuationPair> mus{lk0(), lk1(), lk2()};
  const KinematicResult r = kinematic_direct_and_unfolded(k.family, k.x, mus, k.a, s.quad);
  record_grid(s, r.nodes, r.perturbed, r.nudge_log);
  const SmoothedForm omega(k.family, k.x, s.quad);
  const PointFunctionEval f(k.family, k.x, s.quad);
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double direct = r.values(static_cast<Eigen::Index>(i));
    const double unfolded = r.values(static_cast<Eigen::Index>(i + mus.size()));
    const ThetaPsiResult t = kinematic_forms(omega, f, mus[i], k.a, std::nullopt, sigma_options(s.quad));
    s.report.results[mus[i].name] = {{"direct", direct}, {"unfolded", unfolded}, {"forms", terms_json(t)}};
    s.report.add(make_check("forms:" + mus[i].name, t.total(), direct, 1e-3));
    s.report.add(make_check("unfolded:" + mus[i].name, unfolded, direct, 1e-6));
    s.out << mus[i].name << ": direct " << fmt(direct) << " unfolded " << fmt(unfolded) << " forms "
          << fmt(t.total()) << "\n";
  }
}

void cmd_check(Session& s) {
  const std::string& c = s.opt.check;
  s.report.subcommand = "check " + c;
  if (c == "pkf") return check_pkf(s);
  if (c == "decomposition") return check_decomposition(s);
  if (c == "additivity") return check_additivity(s);
  if (c == "omega") return check_omega(s);
  if (c == "variation") return check_variation(s);
  if (c == "product") return check_product(s);
  if (c == "pointfn") return check_pointfn(s);
  if (c == "forms-vs-direct") return check_forms(s);
  throw Error(ErrorKind::SceneError, "unknown check '" + c + "'");
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::QuadratureFailure ? 3 : 2; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Smooth valuations on the plane: normal cycles, kinematic integrals and their checks", "kinval"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--scene", opt.scene_path, "Scene file (JSON)");
    sub->add_option("--out", opt.out, "Report path; a CSV summary is written next to it");
    sub->add_option("--seed", opt.seed, "Override the scene seed");
    sub->add_option("--tol", opt.tol, "Geometric tolerance; non-transverse inputs are perturbed by 10*tol");
    sub->add_option("--shape", opt.shape, "Scene or built-in shape name");
  };
  CLI::App* intrinsic = app.add_subcommand("intrinsic", "Intrinsic volumes V0, V1, V2");
  common(intrinsic);
  CLI::App* euler = app.add_subcommand("euler", "Euler characteristic");
  common(euler);
  euler->add_option("--method", opt.method, "combinatorial|cycle|morse");
  euler->add_option("--direction", opt.direction, "Morse direction ux,uy");
  CLI::App* dump = app.add_subcommand("dump-cycle", "Print the normal cycle");
  common(dump);
  CLI::App* kin = app.add_subcommand("kinematic", "Kinematic integral of the scene valuation");
  common(kin);
  kin->add_option("--mode", opt.mode, "direct|unfolded|forms");
  kin->add_option("--grid", opt.grid, "Motion grid na,nx,ny");
  CLI::App* check = app.add_subcommand("check", "Run a verification check");
  common(check);
  check->add_option("name", opt.check, "pkf|decomposition|additivity|omega|variation|product|pointfn|forms-vs-direct")
      ->required();
  check->add_option("--grid", opt.grid, "Motion grid na,nx,ny");
  check->add_option("--mc-samples", opt.mc_samples, "Monte Carlo samples for the pkf oracle (0 disables)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  opt.subcommand = app.get_subcommands().front()->get_name();

  Session s{opt, std::nullopt, 0, {}, {}, out};
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!opt.scene_path.empty()) {
      s.scene = load_scene(opt.scene_path, opt.seed);
      s.seed = s.scene->seed;
      s.quad = s.scene->quadrature;
      s.report.scene_hash = s.scene->hash;
    } else if (opt.seed) {
      s.seed = *opt.seed;
    }
    s.report.subcommand = opt.subcommand;
    s.report.seed = s.seed;
    s.report.joint_arc_sign = kJointArcSign;
    s.report.sigma_orientation = kSigmaOrientation;
    s.report.settings["quadrature"] = quadrature_json(s.quad);
    s.report.settings["tol"] = opt.tol;
    if (opt.subcommand == "check") s.report.settings["mc_samples"] = opt.mc_samples;

    if (opt.subcommand == "intrinsic") cmd_intrinsic(s);
    else if (opt.subcommand == "euler") cmd_euler(s);
    else if (opt.subcommand == "dump-cycle") cmd_dump_cycle(s);
    else if (opt.subcommand == "kinematic") cmd_kinematic(s);
    else cmd_check(s);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  s.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!opt.out.empty()) {
    try {
      write_report(s.report, opt.out);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  for (const CheckRecord& c : s.report.checks) {
    if (!c.pass) err << "FAIL " << c.name << ": " << fmt(c.lhs) << " vs " << fmt(c.rhs) << " rel " << c.rel_error
                     << " > " << c.tolerance << "\n";
  }
  out << (s.report.passed() ? "PASS" : "FAIL") << " (" << s.report.checks.size() << " checks)\n";
  return s.report.passed() ? 0 : 1;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace kinval
