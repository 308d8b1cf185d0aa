#pragma once

#include <cstdint>
#include <vector>

#include "specreg/matrix.hpp"

namespace specreg {

/// N x N shift with ones at (i, i+1). Nilpotent of order N.
ComplexMatrix nilpotent_shift(int n);

/// Block-diagonal matrix of (b+1) x (b+1) shifts. The superdiagonal reads
/// (1^b, 0, 1^b, 0, ..., 1^b, 0^r) where r = N mod (b+1) trailing positions are
/// zero: a partial block at the bottom is left entirely zero.
///
/// Requires 1 <= b <= N-1.
ComplexMatrix block_nilpotent(int b, int n);

/// N x N matrix whose only nonzero entry is `delta` in the bottom-left corner
/// (row N, column 1). Added to the shift it closes the chain into a weighted
/// cycle with characteristic polynomial lambda^N - delta.
ComplexMatrix corner_perturbation(int n, Complex delta);

/// Squared Hilbert-Schmidt norm of T_{b,N}^a, as an exact integer:
/// (b - a + 1) * floor(N / (b+1)) for 1 <= a <= b, and 0 for a >= b+1.
std::int64_t nilpotent_power_norm_squared_closed(int b, int n, int a);

/// Hilbert-Schmidt norm of T_{b,N}^a from the closed form.
double nilpotent_power_norm_closed(int b, int n, int a);

/// Eigenvalues of nilpotent_shift(N) + corner_perturbation(N, delta).
struct ShiftSpectrum {
  std::vector<Complex> values;
  /// delta == 0: the matrix is the bare shift and the spectrum is {0} with
  /// multiplicity N.
  bool degenerate = false;
};

/// The N distinct roots of lambda^N = delta, ordered by j = 1..N with
/// lambda_j = |delta|^{1/N} exp(i (arg(delta) + 2 pi j) / N).
ShiftSpectrum exact_perturbed_shift_spectrum(int n, Complex delta);

/// One letter M^alpha (M^*)^beta of a *-word.
struct Letter {
  int alpha = 0;
  int beta = 0;
};

struct Word {
  std::vector<Letter> letters;

  int degree() const;
  /// Total power of M minus total power of M^*.
  int imbalance() const;
  /// Throws std::invalid_argument for empty words, negative exponents or
  /// total degree zero.
  void validate() const;
};

/// (1/N) tr( prod_i M^{alpha_i} (M^*)^{beta_i} ), multiplied left to right.
Complex word_trace(const ComplexMatrix& m, const Word& w);

}  // namespace specreg
