#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "kinval/errors.hpp"

namespace kinval {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

using Point = Vec2<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename Scalar>
inline Mat2<Scalar> rotation(Scalar angle) {
  using std::cos;
  using std::sin;
  Mat2<Scalar> r;
  r << cos(angle), -sin(angle), sin(angle), cos(angle);
  return r;
}

template <typename Scalar>
inline Scalar cross(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename Scalar>
inline Vec2<Scalar> unit_vector(Scalar angle) {
  using std::cos;
  using std::sin;
  return Vec2<Scalar>(cos(angle), sin(angle));
}

/// Reduce an angle to [0, 2π).
double wrap_angle(double theta);

/// Signed difference b - a reduced to (-π, π].
double angle_difference(double a, double b);

struct Tolerance {
  double length = 1e-9;  // length units
  double angle = 1e-6;   // radians
};

/// Unit covector (cos θ, sin θ), canonical θ ∈ [0, 2π).
class Direction {
 public:
  Direction() = default;
  explicit Direction(double theta) : theta_(wrap_angle(theta)) {}

  double angle() const { return theta_; }
  Point unit() const { return unit_vector(theta_); }
  Direction rotated(double by) const { return Direction(theta_ + by); }
  Direction opposite() const { return Direction(theta_ + kPi); }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  double theta_ = 0.0;
};

/// Counterclockwise arc of directions starting at `start`, with a signed
/// multiplicity. Full circles (sweep = 2π) are allowed for point strata.
struct AngularArc {
  Direction start;
  double sweep = 0.0;
  int multiplicity = 1;

  double end_angle() const { return start.angle() + sweep; }
  Direction end() const { return Direction(start.angle() + sweep); }
  /// Offset of d from the start, measured counterclockwise in [0, 2π).
  double offset_of(Direction d) const { return wrap_angle(d.angle() - start.angle()); }
  bool contains(Direction d) const { return offset_of(d) <= sweep; }
  /// Angular distance from d to the nearer arc endpoint.
  double distance_to_endpoints(Direction d) const;
};

/// Orientation-preserving rigid motion x ↦ R(alpha) x + t.
struct RigidMotion {
  double alpha = 0.0;
  Point t = Point::Zero();

  static RigidMotion identity() { return {}; }
  static RigidMotion rotation_about_origin(double a) { return {a, Point::Zero()}; }
  static RigidMotion translation(const Point& v) { return {0.0, v}; }

  Point apply(const Point& p) const { return rotation(alpha) * p + t; }
  Point operator()(const Point& p) const { return apply(p); }
  Direction apply(const Direction& d) const { return d.rotated(alpha); }
  RigidMotion inverse() const { return {-alpha, -(rotation(-alpha) * t)}; }
  /// (*this) ∘ other
  RigidMotion compose(const RigidMotion& other) const {
    return {alpha + other.alpha, rotation(alpha) * other.t + t};
  }
};

using Loop = std::vector<Point>;

double signed_area(const Loop& loop);
double loop_length(const Loop& loop);
/// Crossing-number containment test for a single loop (orientation ignored).
bool loop_contains(const Loop& loop, const Point& p);

/// Compact stratified polygonal region: outer loops counterclockwise, holes
/// clockwise; vertices are the 0-strata, open edges the 1-strata.
class PolygonalRegion {
 public:
  struct Unchecked {};

  PolygonalRegion() = default;
  /// Caller guarantees every invariant (used by boolean operations and motions).
  PolygonalRegion(std::vector<Loop> loops, Unchecked) : loops_(std::move(loops)) {}

  /// Validates loops, merges collinear chains, and checks nesting/orientation.
  static PolygonalRegion from_loops(std::vector<Loop> loops, const Tolerance& tol = {});
  static PolygonalRegion box(double x0, double y0, double x1, double y1);
  static PolygonalRegion regular_polygon(const Point& center, double radius, int sides,
                                         double phase = 0.0);

  const std::vector<Loop>& loops() const { return loops_; }
  bool empty() const { return loops_.empty(); }
  std::size_t vertex_count() const;
  Eigen::AlignedBox2d bounding_box() const;

  template <typename F>
  void for_each_edge(F&& f) const {
    for (std::size_t l = 0; l < loops_.size(); ++l) {
      const Loop& loop = loops_[l];
      for (std::size_t i = 0; i < loop.size(); ++i) {
        f(l, i, loop[i], loop[(i + 1) % loop.size()]);
      }
    }
  }

 private:
  std::vector<Loop> loops_;
};

/// Finite set of distinct points (0-dimensional strata).
struct PointSet {
  std::vector<Point> points;

  static PointSet from_points(std::vector<Point> pts, const Tolerance& tol = {});
};

using Shape = std::variant<PolygonalRegion, PointSet>;

/// Winding number of the region boundary around p (1 inside, 0 outside).
int winding_number(const PolygonalRegion& a, const Point& p);
bool contains(const PolygonalRegion& a, const Point& p);
double distance_to_segment(const Point& p, const Point& a, const Point& b);
double distance_to_boundary(const PolygonalRegion& a, const Point& p);

PolygonalRegion apply_motion(const RigidMotion& g, const PolygonalRegion& a);
PointSet apply_motion(const RigidMotion& g, const PointSet& a);
Shape apply_motion(const RigidMotion& g, const Shape& a);

struct AreaPerimeter {
  double area = 0.0;
  double perimeter = 0.0;
};
AreaPerimeter area_perimeter(const PolygonalRegion& a);

struct TransversalityViolation {
  enum class Kind { VertexOnBoundary, ShallowCrossing };
  Kind kind;
  Point where;
  double measure;  // distance (length units) or crossing angle (radians)
  std::string detail;
};

struct TransversalityReport {
  bool transverse = true;
  std::vector<TransversalityViolation> violations;
  explicit operator bool() const { return transverse; }
  std::string summary() const;
};

TransversalityReport transversality_check(const PolygonalRegion& a, const PolygonalRegion& b,
                                          const Tolerance& tol = {});
TransversalityReport transversality_check(const PointSet& a, const PolygonalRegion& b,
                                          const Tolerance& tol = {});

/// Boundary crossing of edge (loop_a, edge_a) of A with edge (loop_b, edge_b) of B.
struct EdgeCrossing {
  std::size_t loop_a, edge_a, loop_b, edge_b;
  double ta, tb;  // parameters along each edge in (0, 1)
  Point where;
};
std::vector<EdgeCrossing> boundary_crossings(const PolygonalRegion& a, const PolygonalRegion& b);

/// Stratified intersection; throws NonTransverse unless transversality_check passes.
PolygonalRegion intersect_regions(const PolygonalRegion& a, const PolygonalRegion& b,
                                  const Tolerance& tol = {});
PolygonalRegion union_regions(const PolygonalRegion& a, const PolygonalRegion& b,
                              const Tolerance& tol = {});
PointSet intersect_regions(const PointSet& a, const PolygonalRegion& b, const Tolerance& tol = {});
Shape intersect_regions(const Shape& a, const PolygonalRegion& b, const Tolerance& tol = {});

struct Triangle {
  Point a, b, c;
  std::array<int, 3> ids{};  // global vertex indices into the region's loops
  double area() const { return 0.5 * cross<double>(b - a, c - a); }
};

/// Ear-clipping triangulation (holes bridged); every triangle has positive area.
std::vector<Triangle> triangulate(const PolygonalRegion& a);

/// V - E + F of the triangulated cell decomposition.
int euler_combinatorial(const PolygonalRegion& a);
int euler_combinatorial(const PointSet& a);
int euler_combinatorial(const Shape& a);

using NormalCone = std::variant<AngularArc, Direction>;

/// Normal cone at a boundary point: an arc at vertices (multiplicity -1 at
/// reflex corners), the outward normal at open-edge points.
NormalCone normal_cone_at(const PolygonalRegion& a, const Point& s, const Tolerance& tol = {});

}  // namespace kinval
