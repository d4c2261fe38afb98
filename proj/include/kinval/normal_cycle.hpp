#pragma once

#include <string>
#include <vector>

#include "kinval/coef_forms.hpp"
#include "kinval/geometry.hpp"
#include "kinval/quadrature.hpp"

namespace kinval {

/// Segment p0 → p1 at constant normal (the smooth part of N over an edge).
struct EdgePiece {
  Point p0, p1;
  Direction normal;
  int multiplicity = 1;

  double length() const { return (p1 - p0).norm(); }
  Point tangent() const { return (p1 - p0).normalized(); }
};

/// Fiber arc over a single base point.
struct ArcPiece {
  Point base;
  AngularArc arc;
};

/// Integral current in S*M = plane × circle assembled from oriented pieces.
struct NormalCycle {
  std::vector<EdgePiece> edges;
  std::vector<ArcPiece> arcs;

  bool empty() const { return edges.empty() && arcs.empty(); }
};

NormalCycle build_normal_cycle(const PolygonalRegion& a);
NormalCycle build_normal_cycle(const PointSet& a);
NormalCycle build_normal_cycle(const Shape& a);

/// Pushforward under the lifted motion (x, θ) ↦ (g x, θ + g.alpha).
NormalCycle act(const RigidMotion& g, const NormalCycle& n);
/// Pushforward under θ ↦ θ + π, so that ∫ over the result equals ∫_N s*β.
NormalCycle antipodal(const NormalCycle& n);

/// Σ multiplicity · sweep over the arc pieces (∫ dθ).
double turning(const NormalCycle& n);

/// Largest distance between unmatched boundary points; 0 for a cycle.
double closedness_defect(const NormalCycle& n, double tol = 1e-9);
/// max |α(tangent)| over the quadrature nodes of every piece.
double legendrian_defect(const NormalCycle& n, int nodes = 16);

double integrate_form(const NormalCycle& n, const CoefForm1& beta, const QuadratureOptions& opt = {});
double integrate_form(const std::vector<ArcPiece>& arcs, const CoefForm1& beta,
                      const QuadratureOptions& opt = {});
double integrate_form(const EdgePiece& e, const CoefForm1& beta, const QuadratureOptions& opt = {});
double integrate_form(const ArcPiece& a, const CoefForm1& beta, const QuadratureOptions& opt = {});

/// Part of N lying over B: edges clipped to B, arcs kept when their base is
/// interior to B. Throws NonGeneric when an arc base lies on ∂B.
NormalCycle restrict_to_region(const NormalCycle& n, const PolygonalRegion& b,
                               const Tolerance& tol = {});

/// Sign applied to every joint arc; see calibrate_joint_arc_sign.
inline constexpr int kJointArcSign = +1;

struct Decomposition {
  NormalCycle piece_a;
  NormalCycle piece_b;
  std::vector<ArcPiece> joint_arcs;
};

/// Three-piece split of N(A∩B). Each joint arc runs counterclockwise along
/// the short arc between the two edge normals, starting from the normal of
/// the edge that enters the corner of A∩B, with multiplicity `joint_sign`.
Decomposition decompose_intersection(const PolygonalRegion& a, const PolygonalRegion& b,
                                     const Tolerance& tol = {}, int joint_sign = kJointArcSign);

double integrate_form(const Decomposition& d, const CoefForm1& beta, const QuadratureOptions& opt = {});

/// Recovers the joint-arc sign from the decomposition identity with the
/// dθ form on a square pair placed by a seeded motion.
int calibrate_joint_arc_sign(std::uint64_t seed);

/// One line per piece, for the dump-cycle subcommand.
std::string to_text(const NormalCycle& n);

}  // namespace kinval
