#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "specreg/matrix.hpp"

namespace specreg {

/// Polynomially vanishing variance: per-entry variance N^{-2s} must sit inside
/// N^{-kappa'} <= N^{-2s} <= N^{-1-kappa}, i.e. (1+kappa)/2 <= s <= kappa'/2.
struct VarianceProfile {
  double kappa = 1.0;
  double kappa_prime = 7.0;
  /// Standard deviation exponent: entries have standard deviation N^{-s}.
  double s = 3.5;

  /// Throws std::invalid_argument naming the violated side of the sandwich
  /// (or the malformed parameter).
  void validate() const;
  bool admissible() const noexcept;
  double variance(int n) const;
};

enum class EnsembleKind { real_gaussian, complex_gaussian };

/// 1 for real entries, 2 for complex entries.
int beta(EnsembleKind kind) noexcept;
std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble(const std::string& text);

/// (master seed, trial index) fully determines the random stream.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// Mersenne twister seeded through std::seed_seq from the four 32-bit halves of
/// (seed, trial).
std::mt19937_64 make_engine(const SeedSpec& spec);

/// I.i.d. centered Gaussian entries of variance `variance`; complex entries split
/// the variance evenly between real and imaginary parts.
ComplexMatrix sample_gaussian_entries(int n, double variance, EnsembleKind kind, const SeedSpec& seed);

/// Validates `profile` then samples with per-entry variance N^{-2s}.
ComplexMatrix sample_gaussian_matrix(int n, const VarianceProfile& profile, EnsembleKind kind,
                                     const SeedSpec& seed);

enum class NormKind { hilbert_schmidt, operator_norm };

/// Complex Gaussian sample rescaled to have norm exactly `g` in the requested norm.
ComplexMatrix sample_bounded_norm_matrix(int n, double g, const SeedSpec& seed,
                                         NormKind norm = NormKind::hilbert_schmidt);

struct NormMomentSummary {
  int n = 0;
  int trials = 0;
  double mean_op_norm = 0.0;          // E ||G||_op
  double mean_op_norm_squared = 0.0;  // E ||G||_op^2
  double scale = 0.0;                 // sqrt(N) * N^{-s}
};

/// Monte Carlo estimate of the first two operator-norm moments of
/// sample_gaussian_matrix, using trials 0..trials-1 under `seed.seed`.
NormMomentSummary gaussian_norm_moment_check(int n, const VarianceProfile& profile, EnsembleKind kind,
                                             int trials, std::uint64_t seed);

}  // namespace specreg
