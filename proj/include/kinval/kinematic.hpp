#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kinval/forms.hpp"
#include "kinval/geometry.hpp"
#include "kinval/normal_cycle.hpp"
#include "kinval/quadrature.hpp"

namespace kinval {

struct Plateau {
  double r0 = 5.0;  // ρ ≡ c for |t| ≤ r0
  double r1 = 6.0;  // ρ = 0 for |t| ≥ r1
  double c = 1.0;
};

enum class Profile { SmoothStep, Indicator };

/// SE(2) family (α, t) ↦ R_α x + t with density ρ(α, t) = c·m(|t|).
struct MotionFamily {
  Plateau plateau;
  Profile profile = Profile::SmoothStep;
  bool translations_only = false;   // α frozen at 0; not admissible
  std::array<int, 3> grid{64, 8, 8};  // α nodes, t_x and t_y nodes per cell
  int plateau_order = 3;              // per-cell order where ρ is constant
  std::uint64_t seed = 0;

  /// m(r) ∈ [0, 1].
  double profile_value(double r) const;
  double density(double alpha, const Point& t) const;
  double density(const Point& t) const { return plateau.c * profile_value(t.norm()); }
  /// ∫ ρ dα dt.
  double mass() const;
};

struct AdmissibilityReport {
  bool support = true;
  bool smooth = true;
  bool submersive = true;
  int min_rank = 3;
  double jump_ratio = 0.0;
  std::vector<std::string> failures;
  bool passed() const { return support && smooth && submersive; }
};

AdmissibilityReport admissibility_check(const MotionFamily& family, int samples = 100);

/// f(x) = ∫ 1[x ∈ φ_p(X)] ρ(p) dp.
///
/// The family integrates over all rotations, so f depends on |x| only.
/// operator() interpolates a piecewise Chebyshev table of the radial profile,
/// built on first use and validated against exact() between the nodes.
class PointFunctionEval {
 public:
  PointFunctionEval(MotionFamily family, PolygonalRegion x, QuadratureOptions opt = {1 << 4, 1e-10, 1e-14, 1024});
  double operator()(const Point& x) const;
  /// Direct evaluation by fiber quadrature, no table.
  double exact(const Point& x) const;
  /// Largest validation residual of the table, relative to max f.
  double table_error() const;

  struct Panel {
    double lo, hi;
    std::vector<double> values;  // at Chebyshev points of the second kind
  };

 private:
  const std::vector<Panel>& table() const;

  MotionFamily family_;
  PolygonalRegion x_;
  std::vector<Triangle> triangles_;
  double radius_ = 0.0;
  double area_ = 0.0;
  QuadratureOptions opt_;
  struct Table {
    std::once_flag once;
    std::vector<Panel> panels;
    double error = 0.0;
  };
  std::shared_ptr<Table> table_ = std::make_shared<Table>();
};

double point_function_f(const MotionFamily& family, const PolygonalRegion& x, const Point& at,
                        const QuadratureOptions& opt = {});

/// The smoothed 2-form ω of the motion-averaged current of N(X), evaluated by
/// fiber quadrature with a write-once memo keyed on the evaluation point.
class SmoothedForm {
 public:
  SmoothedForm(MotionFamily family, PolygonalRegion x, QuadratureOptions opt = {});
  SmoothedForm(const SmoothedForm&) = delete;
  SmoothedForm& operator=(const SmoothedForm&) = delete;

  /// (p, q, r) at (x, y, θ).
  Eigen::Vector3d operator()(double x, double y, double theta) const;
  Eigen::Vector3d evaluate_uncached(double x, double y, double theta) const;
  /// View as a CoefForm2 (the SmoothedForm must outlive it).
  CoefForm2 as_form() const;
  std::size_t cache_size() const;
  /// Radius beyond which ω vanishes.
  double reach() const { return family_.plateau.r1 + radius_; }

 private:
  MotionFamily family_;
  PolygonalRegion x_;
  NormalCycle cycle_;
  double radius_ = 0.0;
  QuadratureOptions opt_;
  mutable std::mutex mutex_;
  mutable std::map<std::array<double, 3>, Eigen::Vector3d> memo_;
};

/// Fixed geometry that the moved set X is tested against: edges and vertices
/// whose incidence with the moved X changes the integrand's combinatorics,
/// plus the box outside of which the integrand vanishes.
struct EventGeometry {
  std::vector<std::pair<Point, Point>> edges;
  std::vector<Point> vertices;
  Eigen::AlignedBox2d support;
  std::vector<double> edge_angles;  // directions producing parallel-edge α breakpoints
};

EventGeometry event_geometry(const Shape& a);
/// Adds ∂E and the crossings of ∂A with ∂E (localized integrands).
EventGeometry event_geometry(const Shape& a, const PolygonalRegion& e);

struct GridOutcome {
  Eigen::VectorXd value;
  long nodes = 0;
  int perturbed = 0;
  std::vector<std::string> nudge_log;
};

using MotionIntegrand = std::function<Eigen::VectorXd(const RigidMotion&)>;

/// ∫ f(g) ρ(g) dg over SE(2). The α axis is split at parallel-edge angles; for
/// each α the t plane is cut along the event segments so that every cell
/// carries a smooth integrand, and each cell gets a Gauss–Legendre product
/// rule. Nodes that hit a non-transverse configuration are nudged by a seeded
/// 1e-7 perturbation (at most 3 tries).
GridOutcome integrate_over_motions(const MotionFamily& family, const EventGeometry& fixed,
                                   const PolygonalRegion& x, int dim, const MotionIntegrand& f);

struct KinematicResult {
  Eigen::VectorXd values;  // one entry per valuation
  long nodes = 0;
  int perturbed = 0;
  std::vector<std::string> nudge_log;
};

/// ν(A) = ∫ μ(A ∩ gX) ρ(g) dg for each μ.
KinematicResult kinematic_direct(const MotionFamily& family, const PolygonalRegion& x,
                                 const std::vector<ValuationPair>& mus, const Shape& a,
                                 const QuadratureOptions& opt = {});
/// Same integral through the three-piece split of N(A ∩ gX).
KinematicResult kinematic_unfolded(const MotionFamily& family, const PolygonalRegion& x,
                                   const std::vector<ValuationPair>& mus, const Shape& a,
                                   const QuadratureOptions& opt = {});
/// Both routes from one pass over the grid: entries [0, k) direct, [k, 2k) unfolded.
KinematicResult kinematic_direct_and_unfolded(const MotionFamily& family, const PolygonalRegion& x,
                                              const std::vector<ValuationPair>& mus, const Shape& a,
                                              const QuadratureOptions& opt = {});

/// Per-motion bracket of the unfolded route: ∫ over the three pieces of β plus ∫_{A∩gX} γ.
double unfolded_bracket(const ValuationPair& mu, const Shape& a, const PolygonalRegion& gx,
                        const QuadratureOptions& opt = {});

struct MonteCarloResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

/// Seeded Monte Carlo estimate of ∫ χ(A ∩ gX) ρ dg for convex A and X (separating-axis test).
MonteCarloResult kinematic_chi_monte_carlo(const MotionFamily& family, const PolygonalRegion& x,
                                           const PolygonalRegion& a, long samples, std::uint64_t seed);

/// Seeded Monte Carlo estimate of f(x) by membership sampling.
MonteCarloResult point_function_monte_carlo(const MotionFamily& family, const PolygonalRegion& x,
                                            const Point& at, long samples, std::uint64_t seed);

struct PairingResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = ∫_P ∫_{φ̃_p N(X)} τ dp; rhs = ∫_{S*M} ω∧τ.
PairingResult pairing_check(const MotionFamily& family, const PolygonalRegion& x, const SmoothedForm& omega,
                            const CoefForm1& tau, int nodes_per_axis = 48);

/// Smooth radial cutoff equal to 1 on |x| ≤ r0 and 0 beyond r1.
double smooth_cutoff(double r, double r0, double r1);

}  // namespace kinval
