#pragma once

#include <string>
#include <vector>

#include "kinval/geometry.hpp"

namespace kinval {

/// f = u·x (affine) or f = |x − p|²/2 (radial).
struct MorseFunction {
  enum class Kind { Affine, Radial };
  Kind kind = Kind::Affine;
  Point u = Point(1.0, 0.0);
  Point p = Point::Zero();

  static MorseFunction affine(const Point& u) { return {Kind::Affine, u, Point::Zero()}; }
  static MorseFunction radial(const Point& p) { return {Kind::Radial, Point(1.0, 0.0), p}; }

  double value(const Point& x) const;
  Point gradient(const Point& x) const;
};

struct CriticalRecord {
  enum class Stratum { Vertex, Edge, Interior };
  Point location;
  Stratum stratum;
  int sign;  // (−1)^{Morse index}
  double value;
};

struct MorseDiagnostic {
  bool morse = true;
  std::vector<std::string> problems;
  explicit operator bool() const { return morse; }
};

MorseDiagnostic is_morse_on(const MorseFunction& f, const PolygonalRegion& a, const Tolerance& tol = {});

/// Intersection points of s(Nor A) with the graph of df, with signs. Throws NotMorse.
std::vector<CriticalRecord> critical_points(const MorseFunction& f, const PolygonalRegion& a,
                                            const Tolerance& tol = {});

int euler_via_morse(const MorseFunction& f, const PolygonalRegion& a, const Tolerance& tol = {});

/// Σ signs of critical records with value ≤ t. Throws CriticalValue when t is
/// within tol.length of a critical value.
int sublevel_euler(const MorseFunction& f, const PolygonalRegion& a, double t, const Tolerance& tol = {});

/// χ of A ∩ {f ≤ t} by clipping: a halfplane box (affine) or the inscribed and
/// circumscribed 720-gons (radial). Returns both counts for the radial case.
std::pair<int, int> sublevel_euler_by_clipping(const MorseFunction& f, const PolygonalRegion& a, double t);

}  // namespace kinval
