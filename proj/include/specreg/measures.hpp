#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "specreg/matrix.hpp"

namespace specreg {

/// Uniform-weight atomic probability measure. Atoms are stored in a canonical
/// sorted order, so two measures built from permutations of the same points
/// compare equal.
template <class Point>
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<Point> atoms);

  const std::vector<Point>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double weight() const noexcept { return 1.0 / static_cast<double>(atoms_.size()); }

  bool operator==(const EmpiricalMeasure&) const = default;

 private:
  std::vector<Point> atoms_;
};

using RealMeasure = EmpiricalMeasure<double>;
using PlanarMeasure = EmpiricalMeasure<Complex>;

extern template class EmpiricalMeasure<double>;
extern template class EmpiricalMeasure<Complex>;

RealMeasure empirical_from_points(std::vector<double> points);
PlanarMeasure empirical_from_points(std::vector<Complex> points);

/// The 2N-atom measure of the eigenvalues of hermitize(M - z I).
RealMeasure hermitized_shifted_measure(const ComplexMatrix& m, Complex z);

/// P([a, b]) for the closed interval.
double interval_mass(const RealMeasure& p, double a, double b);

/// G_P(z) = sum_k w / (z - x_k).
Complex stieltjes(const RealMeasure& p, Complex z);

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Absolute error target for the smoothing quadrature.
inline constexpr double kSmoothingTolerance = 1e-8;

/// (P * Cauchy_gamma)([a, b]) = (1/pi) int_a^b |Im G_P(x + i gamma)| dx, by
/// adaptive Gauss-Kronrod quadrature split at the atoms inside [a, b].
/// Throws QuadratureError when the error estimate exceeds kSmoothingTolerance.
double cauchy_smooth_interval(const RealMeasure& p, double gamma, double a, double b);

struct SmoothedDensity {
  double gamma = 0.0;
  std::vector<double> grid;
  /// |Im G(x + i gamma)| on the grid; divide by pi for the Cauchy-smoothed density.
  std::vector<double> values;
};

SmoothedDensity smoothed_density(const RealMeasure& p, double gamma, std::vector<double> grid);

struct LogTail {
  /// sum of w * log(1/x) over atoms x in (0, eps].
  double value = 0.0;
  /// Atoms exactly at 0: their contribution is infinite and is reported here
  /// instead of in `value`.
  std::size_t zero_atoms = 0;
};

/// int_{[0, eps]} log(1/x) dP(x). Negative atoms lie outside the range of
/// integration and contribute nothing. Requires 0 < eps < 1.
LogTail log_tail(const RealMeasure& p, double eps);

/// Planar reference law described through the distribution functions of its
/// modulus and of its argument (taken in [0, 2 pi)).
class PlanarReferenceLaw {
 public:
  virtual ~PlanarReferenceLaw() = default;

  /// P(|Z| <= r) and P(|Z| < r).
  virtual double radial_cdf(double r) const = 0;
  virtual double radial_cdf_left(double r) const = 0;
  /// Points where the radial distribution function jumps.
  virtual std::vector<double> radial_jumps() const = 0;

  virtual double angular_cdf(double theta) const = 0;
  virtual double angular_cdf_left(double theta) const = 0;
  virtual std::vector<double> angular_jumps() const = 0;
};

/// Kolmogorov distance between the law of |atom| under P and the radial law of Q.
double radial_ks_distance(const PlanarMeasure& p, const PlanarReferenceLaw& q);
/// Kolmogorov distance between the law of arg(atom) in [0, 2 pi) and the
/// angular law of Q.
double angular_ks_distance(const PlanarMeasure& p, const PlanarReferenceLaw& q);

double mean_modulus(const PlanarMeasure& p);
double max_modulus(const PlanarMeasure& p);

}  // namespace specreg
