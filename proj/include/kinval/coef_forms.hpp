#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "kinval/exterior.hpp"
#include "kinval/geometry.hpp"

namespace kinval {

/// a dx + b dy + c dθ on S*M, coefficients returned as (a, b, c).
struct CoefForm1 {
  std::string name;
  std::function<Eigen::Vector3d(double x, double y, double theta)> coeffs;
  // Structural zeros let integrators skip whole piece families.
  bool spatial_zero = false;  // a = b = 0
  bool angular_zero = false;  // c = 0

  Eigen::Vector3d operator()(double x, double y, double theta) const { return coeffs(x, y, theta); }
  ExtForm<double> at(double x, double y, double theta) const {
    const Eigen::Vector3d v = coeffs(x, y, theta);
    return one_form(v(0), v(1), v(2));
  }
  bool is_zero() const { return spatial_zero && angular_zero; }
};

/// p dx∧dy + q dx∧dθ + r dy∧dθ on S*M, coefficients returned as (p, q, r).
struct CoefForm2 {
  std::string name;
  std::function<Eigen::Vector3d(double x, double y, double theta)> coeffs;

  Eigen::Vector3d operator()(double x, double y, double theta) const { return coeffs(x, y, theta); }
  ExtForm<double> at(double x, double y, double theta) const {
    const Eigen::Vector3d v = coeffs(x, y, theta);
    return two_form(v(0), v(1), v(2));
  }
};

/// g dx∧dy on the plane.
struct BaseForm2 {
  std::string name;
  std::function<double(double x, double y)> g;
  bool zero = false;

  double operator()(double x, double y) const { return zero ? 0.0 : g(x, y); }
};

/// The valuation [[β, γ]].
struct ValuationPair {
  std::string name;
  CoefForm1 beta;
  BaseForm2 gamma;
};

CoefForm1 zero_form1();
BaseForm2 zero_base_form();
CoefForm2 zero_form2();

/// (1/2π) dθ, ½(−sin θ dx + cos θ dy) and dx∧dy.
ValuationPair lk0();
ValuationPair lk1();
ValuationPair lk2();

inline constexpr int kPolyTrigBetaParams = 90;
inline constexpr int kPolyTrigParams = 96;

/// Each of a, b, c is Σ w_ij m_i(x, y) t_j(θ) with monomials {1, x, y, x², xy, y²}
/// and trigonometric terms {1, cos θ, sin θ, cos 2θ, sin 2θ}; parameters 0..29
/// feed a, 30..59 b, 60..89 c (index 5·i + j within each block). Parameters
/// 90..95 are the monomial weights of γ. Missing parameters are zero.
ValuationPair poly_trig(const std::vector<double>& params);

/// Registry lookup by name: lk0, lk1, lk2, poly_trig. Throws SceneError.
ValuationPair make_valuation(const std::string& name, const std::vector<double>& params);
std::vector<std::string> valuation_names();

/// Linear combinations, used by linearity checks.
ValuationPair combine(double s, const ValuationPair& a, double t, const ValuationPair& b);

/// Multiplies the coefficients of β by h(x, y, θ) (e.g. a cutoff).
CoefForm1 scale_form(const CoefForm1& beta, std::function<double(double, double, double)> h);

/// The pullback under θ ↦ θ + π.
CoefForm2 antipodal_pullback(const CoefForm2& omega);

}  // namespace kinval
