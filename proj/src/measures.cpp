#include "specreg/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "specreg/spectra.hpp"

namespace specreg {

namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool less(double a, double b) { return a < b; }
bool less(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Kolmogorov distance between the empirical law of `samples` and a reference
// distribution function with the given jump points. Between consecutive
// candidates the empirical function is constant and the reference monotone, so
// the supremum is attained at a candidate or its left limit.
template <class Cdf, class CdfLeft>
double kolmogorov(std::vector<double> samples, const std::vector<double>& jumps, Cdf cdf, CdfLeft cdf_left) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  std::vector<double> candidates = samples;
  candidates.insert(candidates.end(), jumps.begin(), jumps.end());
  double d = 0.0;
  for (double x : candidates) {
    const auto right = std::upper_bound(samples.begin(), samples.end(), x) - samples.begin();
    const auto left = std::lower_bound(samples.begin(), samples.end(), x) - samples.begin();
    d = std::max(d, std::abs(static_cast<double>(right) / n - cdf(x)));
    d = std::max(d, std::abs(static_cast<double>(left) / n - cdf_left(x)));
  }
  return std::min(d, 1.0);
}

double wrapped_angle(Complex z) {
  double theta = std::arg(z);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta -= 2.0 * std::numbers::pi;
  return theta;
}

}  // namespace

template <class Point>
EmpiricalMeasure<Point>::EmpiricalMeasure(std::vector<Point> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("EmpiricalMeasure: support must be nonempty");
  for (const auto& a : atoms_) {
    if (!finite(a)) throw std::invalid_argument("EmpiricalMeasure: non-finite atom");
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Point& a, const Point& b) { return less(a, b); });
}

template class EmpiricalMeasure<double>;
template class EmpiricalMeasure<Complex>;

RealMeasure empirical_from_points(std::vector<double> points) { return RealMeasure(std::move(points)); }
PlanarMeasure empirical_from_points(std::vector<Complex> points) { return PlanarMeasure(std::move(points)); }

RealMeasure hermitized_shifted_measure(const ComplexMatrix& m, Complex z) {
  require_square_finite(m, "hermitized_shifted_measure");
  ComplexMatrix shifted = m;
  shifted.diagonal().array() -= z;
  return RealMeasure(hermitize(shifted).eigenvalues());
}

double interval_mass(const RealMeasure& p, double a, double b) {
  if (b < a) return 0.0;
  const auto& x = p.atoms();
  const auto lo = std::lower_bound(x.begin(), x.end(), a);
  const auto hi = std::upper_bound(x.begin(), x.end(), b);
  return static_cast<double>(hi - lo) * p.weight();
}

Complex stieltjes(const RealMeasure& p, Complex z) {
  Complex sum{0.0, 0.0};
  for (double x : p.atoms()) sum += 1.0 / (z - x);
  return sum * p.weight();
}

double cauchy_smooth_interval(const RealMeasure& p, double gamma, double a, double b) {
  if (!(gamma > 0.0)) throw std::invalid_argument("cauchy_smooth_interval: gamma must be > 0");
  if (!(a < b)) throw std::invalid_argument("cauchy_smooth_interval: need a < b");

  auto integrand = [&](double x) { return std::abs(stieltjes(p, Complex(x, gamma)).imag()) / std::numbers::pi; };

  // Each atom contributes a Cauchy peak of width gamma; break at the atom and at
  // geometrically spaced offsets so every panel sees a smooth integrand.
  std::vector<double> breaks{a, b};
  for (double x : p.atoms()) {
    breaks.push_back(x);
    for (double d = gamma; d < b - a; d *= 4.0) {
      breaks.push_back(x - d);
      breaks.push_back(x + d);
    }
  }
  std::erase_if(breaks, [&](double x) { return !(x >= a && x <= b); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double err = 0.0;
    total += Rule::integrate(integrand, breaks[i], breaks[i + 1], 12, 1e-11, &err);
    total_error += err;
  }
  if (!(total_error <= kSmoothingTolerance)) {
    throw QuadratureError("cauchy_smooth_interval: error estimate " + std::to_string(total_error) +
                              " above target",
                          total_error);
  }
  return total;
}

SmoothedDensity smoothed_density(const RealMeasure& p, double gamma, std::vector<double> grid) {
  if (!(gamma > 0.0)) throw std::invalid_argument("smoothed_density: gamma must be > 0");
  std::sort(grid.begin(), grid.end());
  SmoothedDensity out;
  out.gamma = gamma;
  out.values.reserve(grid.size());
  for (double x : grid) out.values.push_back(std::abs(stieltjes(p, Complex(x, gamma)).imag()));
  out.grid = std::move(grid);
  return out;
}

LogTail log_tail(const RealMeasure& p, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("log_tail: eps must lie in (0, 1)");
  LogTail out;
  for (double x : p.atoms()) {
    if (x == 0.0) {
      ++out.zero_atoms;
    } else if (x > 0.0 && x <= eps) {
      out.value -= std::log(x);
    }
  }
  out.value *= p.weight();
  return out;
}

double radial_ks_distance(const PlanarMeasure& p, const PlanarReferenceLaw& q) {
  std::vector<double> moduli;
  moduli.reserve(p.size());
  for (const auto& z : p.atoms()) moduli.push_back(std::abs(z));
  return kolmogorov(
      std::move(moduli), q.radial_jumps(), [&](double r) { return q.radial_cdf(r); },
      [&](double r) { return q.radial_cdf_left(r); });
}

double angular_ks_distance(const PlanarMeasure& p, const PlanarReferenceLaw& q) {
  std::vector<double> angles;
  angles.reserve(p.size());
  for (const auto& z : p.atoms()) angles.push_back(wrapped_angle(z));
  return kolmogorov(
      std::move(angles), q.angular_jumps(), [&](double t) { return q.angular_cdf(t); },
      [&](double t) { return q.angular_cdf_left(t); });
}

double mean_modulus(const PlanarMeasure& p) {
  double sum = 0.0;
  for (const auto& z : p.atoms()) sum += std::abs(z);
  return sum * p.weight();
}

double max_modulus(const PlanarMeasure& p) {
  double m = 0.0;
  for (const auto& z : p.atoms()) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace specreg
