#pragma once

#include <vector>

#include "specreg/matrix.hpp"
#include "specreg/measures.hpp"

namespace specreg {

/// Absolute error target for the Haar unitary quadratures.
inline constexpr double kReferenceTolerance = 1e-10;

/// k-th moment of the spectral measure of |z - u| for a Haar unitary u:
/// (1/2pi) int_0^{2pi} (|z|^2 + 1 + 2|z| cos t)^{k/2} dt. Odd k returns 0.
/// Throws QuadratureError when the estimated error exceeds kReferenceTolerance.
double haar_moment(Complex z, int k);

/// int_0^eps log x dnu^z(x), with nu^z the spectral measure of |z - u|:
/// (1/4pi) int log h(t) 1{h(t) < eps^2} dt, h(t) = |z|^2 + 1 + 2|z| cos t.
/// Identically 0 when ||z| - 1| >= eps. Requires 0 < eps < 1.
double haar_regularity_tail(Complex z, double eps);

/// Uniform probability measure on the circle of the given radius (the Brown
/// measure of a Haar unitary when radius = 1).
class CircleLaw final : public PlanarReferenceLaw {
 public:
  explicit CircleLaw(double radius = 1.0);

  double radius() const noexcept { return radius_; }

  double radial_cdf(double r) const override;
  double radial_cdf_left(double r) const override;
  std::vector<double> radial_jumps() const override;
  double angular_cdf(double theta) const override;
  double angular_cdf_left(double theta) const override;
  std::vector<double> angular_jumps() const override;

  /// int log|z - w| dnu(w) = log max(|z|, radius).
  double log_potential(Complex z) const;

 private:
  double radius_;
};

CircleLaw circle_law_reference();

}  // namespace specreg
