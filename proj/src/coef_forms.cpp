#include "kinval/coef_forms.hpp"

#include <array>
#include <cmath>

namespace kinval {

CoefForm1 zero_form1() {
  return {"zero", [](double, double, double) { return Eigen::Vector3d::Zero().eval(); }, true, true};
}

BaseForm2 zero_base_form() {
  return {"zero", [](double, double) { return 0.0; }, true};
}

CoefForm2 zero_form2() {
  return {"zero", [](double, double, double) { return Eigen::Vector3d::Zero().eval(); }};
}

ValuationPair lk0() {
  CoefForm1 beta{"lk0", [](double, double, double) { return Eigen::Vector3d(0.0, 0.0, 1.0 / kTwoPi); },
                 true, false};
  return {"lk0", beta, zero_base_form()};
}

ValuationPair lk1() {
  CoefForm1 beta{"lk1",
                 [](double, double, double th) {
                   return Eigen::Vector3d(-0.5 * std::sin(th), 0.5 * std::cos(th), 0.0);
                 },
                 false, true};
  return {"lk1", beta, zero_base_form()};
}

ValuationPair lk2() {
  return {"lk2", zero_form1(), BaseForm2{"area", [](double, double) { return 1.0; }, false}};
}

namespace {

using Monomials = std::array<double, 6>;
using TrigTerms = std::array<double, 5>;

Monomials monomials(double x, double y) { return {1.0, x, y, x * x, x * y, y * y}; }

TrigTerms trig_terms(double th) {
  return {1.0, std::cos(th), std::sin(th), std::cos(2.0 * th), std::sin(2.0 * th)};
}

}  // namespace

ValuationPair poly_trig(const std::vector<double>& params) {
  std::array<double, kPolyTrigParams> w{};
  for (std::size_t i = 0; i < params.size() && i < w.size(); ++i) w[i] = params[i];
  auto block_zero = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      if (w[i] != 0.0) return false;
    return true;
  };
  CoefForm1 beta;
  beta.name = "poly_trig";
  beta.spatial_zero = block_zero(0, 60);
  beta.angular_zero = block_zero(60, 90);
  beta.coeffs = [w](double x, double y, double th) {
    const Monomials m = monomials(x, y);
    const TrigTerms t = trig_terms(th);
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 5; ++j) out(k) += w[30 * k + 5 * i + j] * m[i] * t[j];
    return out;
  };
  BaseForm2 gamma;
  gamma.name = "poly";
  gamma.zero = block_zero(90, 96);
  gamma.g = [w](double x, double y) {
    const Monomials m = monomials(x, y);
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += w[90 + i] * m[i];
    return s;
  };
  return {"poly_trig", beta, gamma};
}

ValuationPair make_valuation(const std::string& name, const std::vector<double>& params) {
  if (name == "lk0") return lk0();
  if (name == "lk1") return lk1();
  if (name == "lk2") return lk2();
  if (name == "poly_trig") {
    if (params.size() > static_cast<std::size_t>(kPolyTrigParams)) {
      throw Error(ErrorKind::SceneError, "poly_trig takes at most 96 parameters");
    }
    return poly_trig(params);
  }
  throw Error(ErrorKind::SceneError, "unknown form name '" + name + "'");
}

std::vector<std::string> valuation_names() { return {"lk0", "lk1", "lk2", "poly_trig"}; }

ValuationPair combine(double s, const ValuationPair& a, double t, const ValuationPair& b) {
  ValuationPair out;
  out.name = "combination";
  out.beta.name = "combination";
  out.beta.spatial_zero = a.beta.spatial_zero && b.beta.spatial_zero;
  out.beta.angular_zero = a.beta.angular_zero && b.beta.angular_zero;
  out.beta.coeffs = [s, t, fa = a.beta.coeffs, fb = b.beta.coeffs](double x, double y, double th) {
    return (s * fa(x, y, th) + t * fb(x, y, th)).eval();
  };
  out.gamma.name = "combination";
  out.gamma.zero = a.gamma.zero && b.gamma.zero;
  out.gamma.g = [s, t, ga = a.gamma, gb = b.gamma](double x, double y) { return s * ga(x, y) + t * gb(x, y); };
  return out;
}

CoefForm1 scale_form(const CoefForm1& beta, std::function<double(double, double, double)> h) {
  CoefForm1 out = beta;
  out.name = beta.name + "*cutoff";
  out.coeffs = [f = beta.coeffs, h = std::move(h)](double x, double y, double th) {
    return (h(x, y, th) * f(x, y, th)).eval();
  };
  return out;
}

CoefForm2 antipodal_pullback(const CoefForm2& omega) {
  return {"s*" + omega.name,
          [f = omega.coeffs](double x, double y, double th) { return f(x, y, th + kPi); }};
}

}  // namespace kinval
