#include "specreg/brown_reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace specreg {

using std::numbers::pi;

double haar_moment(Complex z, int k) {
  if (k < 0) throw std::invalid_argument("haar_moment: k must be >= 0");
  if (k % 2 != 0) return 0.0;
  if (k == 0) return 1.0;
  const double r = std::abs(z);
  const double a = r * r + 1.0;
  const int half = k / 2;
  auto integrand = [&](double t) { return std::pow(a + 2.0 * r * std::cos(t), half); };
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 2.0 * pi, 20, 1e-14, &err) /
      (2.0 * pi);
  if (err / (2.0 * pi) > kReferenceTolerance * std::max(1.0, value)) {
    throw QuadratureError("haar_moment: error estimate " + std::to_string(err) + " above target", err);
  }
  return value;
}

double haar_regularity_tail(Complex z, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("haar_regularity_tail: eps must lie in (0, 1)");
  const double r = std::abs(z);
  const double gap = (r - 1.0) * (r - 1.0);
  if (r == 0.0 || gap >= eps * eps) return 0.0;

  // With t = pi - theta, h = (r-1)^2 + 4 r sin^2(t/2), minimal at t = 0 and
  // crossing eps^2 at t*. The indicator region is |t| < t*, symmetric in t.
  const double sin_half = std::sqrt((eps * eps - gap) / (4.0 * r));
  const double t_star = 2.0 * std::asin(std::min(1.0, sin_half));
  auto integrand = [&](double t) {
    const double s = std::sin(0.5 * t);
    // On the circle the integrand is log(4 r) + 2 log sin(t/2); keep it in that
    // form so tiny abscissae do not underflow to log(0).
    if (gap == 0.0) return std::log(4.0 * r) + 2.0 * std::log(s);
    return std::log(gap + 4.0 * r * s * s);
  };
  boost::math::quadrature::tanh_sinh<double> rule;
  double err = 0.0;
  double l1 = 0.0;
  const double integral = rule.integrate(integrand, 0.0, t_star, 1e-13, &err, &l1);
  // 2 * integral over [0, t*], times 1/(4 pi).
  const double value = integral / (2.0 * pi);
  if (err / (2.0 * pi) > kReferenceTolerance) {
    throw QuadratureError("haar_regularity_tail: error estimate " + std::to_string(err) + " above target", err);
  }
  return value;
}

CircleLaw::CircleLaw(double radius) : radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("CircleLaw: radius must be > 0");
}

double CircleLaw::radial_cdf(double r) const { return r >= radius_ ? 1.0 : 0.0; }
double CircleLaw::radial_cdf_left(double r) const { return r > radius_ ? 1.0 : 0.0; }
std::vector<double> CircleLaw::radial_jumps() const { return {radius_}; }

double CircleLaw::angular_cdf(double theta) const { return std::clamp(theta / (2.0 * pi), 0.0, 1.0); }
double CircleLaw::angular_cdf_left(double theta) const { return angular_cdf(theta); }
std::vector<double> CircleLaw::angular_jumps() const { return {}; }

double CircleLaw::log_potential(Complex z) const { return std::log(std::max(std::abs(z), radius_)); }

CircleLaw circle_law_reference() { return CircleLaw(1.0); }

}  // namespace specreg
