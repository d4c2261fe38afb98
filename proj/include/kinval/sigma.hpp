#pragma once

#include <optional>

#include "kinval/kinematic.hpp"

namespace kinval {

/// Orientation constant of the completed interpolation space; see
/// calibrate_sigma_orientation.
inline constexpr int kSigmaOrientation = +1;

struct ThetaPsiResult {
  double term1 = 0.0;  // interpolation term over ξ⁻¹N(A)
  double term2 = 0.0;  // ∫_{N(A)} π*f · β
  double term3 = 0.0;  // ∫_{A×S¹} β∧ω
  double term4 = 0.0;  // ∫_A f γ
  double total() const { return term1 + term2 + term3 + term4; }
};

/// Quadrature settings for the Σ integrals: outer axes at `outer`, inner at `inner`.
struct SigmaOptions {
  QuadratureOptions outer{16, 1e-8, 1e-13, 1024};
  QuadratureOptions inner{16, 1e-10, 1e-14, 1024};
};

/// (−1)ⁿ ∫_{ξ⁻¹N} ζ*β ∧ η*ω over the completion coordinates (s, t̃, r) and both sheets.
double interpolation_integral(const NormalCycle& n, const CoefForm1& beta, const CoefForm2& omega,
                              const SigmaOptions& opt = {}, int orientation = kSigmaOrientation);

/// ∫_{A×S¹} β∧ω.
double pushdown_integral(const PolygonalRegion& a, const CoefForm1& beta, const CoefForm2& omega,
                         const SigmaOptions& opt = {});

/// Forms route for ν(A) (optionally localized to E): the four terms built
/// from ω and f of the family acting on X.
ThetaPsiResult kinematic_forms(const SmoothedForm& omega, const PointFunctionEval& f, const ValuationPair& mu,
                               const Shape& a, const std::optional<PolygonalRegion>& e = std::nullopt,
                               const SigmaOptions& opt = {});
ThetaPsiResult kinematic_forms(const MotionFamily& family, const PolygonalRegion& x, const ValuationPair& mu,
                               const Shape& a, const SigmaOptions& opt = {});

struct ProductResult {
  ThetaPsiResult forms;  // lhs terms
  double lhs = 0.0;
  double rhs = 0.0;
  long nodes = 0;
  int perturbed = 0;
};

/// (ν_χ·Φ)(A, E): lhs by the localized forms route, rhs by grid quadrature of
/// Φ(A ∩ gX, E) over the family.
ProductResult product_check(const MotionFamily& family, const PolygonalRegion& x, const ValuationPair& phi,
                            const PolygonalRegion& a, const PolygonalRegion& e, const SmoothedForm& omega,
                            const PointFunctionEval& f, const SigmaOptions& opt = {});

/// Recovers the Σ orientation constant by comparing the raw interpolation
/// term with the joint-arc part of the unfolded route (dθ form, covering
/// plateau, seeded square X).
int calibrate_sigma_orientation(std::uint64_t seed);

}  // namespace kinval
