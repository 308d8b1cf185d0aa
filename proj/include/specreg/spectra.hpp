#pragma once

#include <stdexcept>
#include <vector>

#include "specreg/matrix.hpp"

namespace specreg {

/// Relative backward-error threshold above which a result is flagged degraded.
inline constexpr double kDefaultSpectralTolerance = 1e-8;

/// Computed spectrum plus a backward-error diagnostic.
///
/// For eigenvalues the residual is ||U T U^* - M||_F / ||M||_F from the complex
/// Schur form M = U T U^*; the values are the exact eigenvalues of M + dM with
/// ||dM||_F equal to that residual times ||M||_F. For singular values it is the
/// analogous reconstruction error of the SVD.
template <class Value>
struct SpectrumResult {
  std::vector<Value> values;
  double residual = 0.0;
  bool degraded = false;
  bool converged = true;
};

using EigenResult = SpectrumResult<Complex>;
using SingularResult = SpectrumResult<double>;

class DegradedSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All N eigenvalues with multiplicity, via Hessenberg reduction and shifted QR
/// (complex Schur decomposition).
EigenResult eigenvalues(const ComplexMatrix& m, double tol = kDefaultSpectralTolerance);

/// Singular values in nonincreasing order.
SingularResult singular_values(const ComplexMatrix& m, double tol = kDefaultSpectralTolerance);

/// max |lambda|. Throws DegradedSpectrum if the eigensolve is flagged degraded.
double spectral_radius(const ComplexMatrix& m, double tol = kDefaultSpectralTolerance);

double operator_norm(const ComplexMatrix& m);
double hs_norm(const ComplexMatrix& m);

/// The 2N x 2N Hermitian block matrix [[0, C], [C^*, 0]].
class HermitizedMatrix {
 public:
  explicit HermitizedMatrix(const ComplexMatrix& c);

  int base_dim() const noexcept { return base_dim_; }
  const ComplexMatrix& matrix() const noexcept { return h_; }
  /// Ascending eigenvalues; symmetric about zero and equal to {+-sigma_i(C)}.
  std::vector<double> eigenvalues() const;

 private:
  int base_dim_;
  ComplexMatrix h_;
};

HermitizedMatrix hermitize(const ComplexMatrix& c);

/// G(z) = (1/2N) tr (z - hermitize(C + xi I))^{-1}, Im z > 0.
///
/// One Hermitian eigensolve at construction; evaluate() is O(N) per point.
class CauchyTransform {
 public:
  CauchyTransform(const ComplexMatrix& c, Complex xi = {0.0, 0.0});

  Complex evaluate(Complex z) const;
  const std::vector<double>& atoms() const noexcept { return atoms_; }

 private:
  std::vector<double> atoms_;
};

Complex cauchy_transform(const ComplexMatrix& c, Complex z, Complex xi = {0.0, 0.0});

/// Smallest singular value of M + z I.
double smallest_singular_value(const ComplexMatrix& m, Complex z);

}  // namespace specreg
