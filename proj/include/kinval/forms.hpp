#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kinval/coef_forms.hpp"
#include "kinval/normal_cycle.hpp"
#include "kinval/quadrature.hpp"

namespace kinval {

/// A sample point (x, y, θ) of S*M.
using ContactPoint = Eigen::Vector3d;

/// ∫_{N(A)} β + ∫_A γ.
double eval_valuation(const ValuationPair& mu, const PolygonalRegion& a, const QuadratureOptions& opt = {});
double eval_valuation(const ValuationPair& mu, const PointSet& a, const QuadratureOptions& opt = {});
double eval_valuation(const ValuationPair& mu, const Shape& a, const QuadratureOptions& opt = {});

/// ∫_{N(A) ∩ π⁻¹E} β + ∫_{A∩E} γ. Throws NonGeneric unless E is transverse to A.
double curvature_measure(const ValuationPair& mu, const PolygonalRegion& a, const PolygonalRegion& e,
                         const QuadratureOptions& opt = {});
double curvature_measure(const ValuationPair& mu, const Shape& a, const PolygonalRegion& e,
                         const QuadratureOptions& opt = {});

/// ∫_0^{2π} c(x, θ) dθ with counterclockwise fiber orientation (= μ({x})).
double point_function(const ValuationPair& mu, const Point& x, const QuadratureOptions& opt = {});

using FormField = std::function<ExtForm<double>(const ContactPoint&)>;

/// max |α∧(T⌐β) + T⌐(α∧β) − β| over the samples, coefficientwise.
double reeb_decomposition_check(const FormField& beta, const std::vector<ContactPoint>& samples);

/// max |r cos θ − q sin θ|, the single coefficient of α∧ω.
double verticality_check(const CoefForm2& omega, const std::vector<ContactPoint>& samples);

/// max |∂θ p − ∂y q + ∂x r| by central differences with step h.
double closedness_check(const CoefForm2& omega, const std::vector<ContactPoint>& samples, double h);

/// Affine vector field v(x) = M x + b on the plane.
struct AffineField {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  Point b = Point::Zero();

  static AffineField translation(const Point& v) { return {Eigen::Matrix2d::Zero(), v}; }
  static AffineField dilation(const Point& center) { return {Eigen::Matrix2d::Identity(), -center}; }

  Point operator()(const Point& x) const { return m * x + b; }
  /// Exact time-t flow map applied to x.
  Point flow(double t, const Point& x) const;
};

PolygonalRegion flow_region(const AffineField& v, double t, const PolygonalRegion& a);

struct VariationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double verticality = 0.0;
};

/// lhs: central difference of t ↦ μ(F_t A) with step h; rhs: ∫_{N(A)} v⌐Δ
/// with v lifted horizontally. Throws NonVertical when Δ fails the
/// verticality check along N(A) by more than vert_tol.
VariationResult variation_probe(const std::function<double(const PolygonalRegion&)>& mu,
                                const PolygonalRegion& a, const AffineField& v,
                                const CoefForm2& candidate, double h,
                                const QuadratureOptions& opt = {}, double vert_tol = 1e-6);

/// ∫_{N(A)} v⌐Δ alone.
double variation_rhs(const PolygonalRegion& a, const AffineField& v, const CoefForm2& candidate,
                     const QuadratureOptions& opt = {});

}  // namespace kinval
