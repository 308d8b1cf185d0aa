#include "specreg/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

#include "specreg/spectra.hpp"

namespace specreg {

void VarianceProfile::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("VarianceProfile: kappa must be > 0");
  if (!(kappa_prime >= 1.0 + kappa)) {
    throw std::invalid_argument("VarianceProfile: kappa' must be >= 1 + kappa");
  }
  if (!(s > 0.0)) throw std::invalid_argument("VarianceProfile: s must be > 0");
  std::ostringstream msg;
  if (2.0 * s < 1.0 + kappa) {
    msg << "VarianceProfile: upper bound E|G_ij|^2 <= N^{-1-kappa} violated (s=" << s
        << " < (1+kappa)/2=" << (1.0 + kappa) / 2.0 << ")";
    throw std::invalid_argument(msg.str());
  }
  if (2.0 * s > kappa_prime) {
    msg << "VarianceProfile: lower bound E|G_ij|^2 >= N^{-kappa'} violated (s=" << s
        << " > kappa'/2=" << kappa_prime / 2.0 << ")";
    throw std::invalid_argument(msg.str());
  }
}

bool VarianceProfile::admissible() const noexcept {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

double VarianceProfile::variance(int n) const { return std::pow(static_cast<double>(n), -2.0 * s); }

int beta(EnsembleKind kind) noexcept { return kind == EnsembleKind::real_gaussian ? 1 : 2; }

std::string to_string(EnsembleKind kind) {
  return kind == EnsembleKind::real_gaussian ? "real" : "complex";
}

EnsembleKind parse_ensemble(const std::string& text) {
  if (text == "real" || text == "real-gaussian") return EnsembleKind::real_gaussian;
  if (text == "complex" || text == "complex-gaussian") return EnsembleKind::complex_gaussian;
  throw std::invalid_argument("unknown ensemble '" + text + "' (expected real or complex)");
}

std::mt19937_64 make_engine(const SeedSpec& spec) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(spec.trial), static_cast<std::uint32_t>(spec.trial >> 32)};
  return std::mt19937_64(seq);
}

ComplexMatrix sample_gaussian_entries(int n, double variance, EnsembleKind kind, const SeedSpec& seed) {
  if (n < 1) throw std::invalid_argument("sample_gaussian_entries: N must be >= 1");
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("sample_gaussian_entries: variance must be finite and >= 0");
  }
  auto engine = make_engine(seed);
  // boost's normal_distribution is specified by its source, so streams agree
  // across standard library implementations.
  boost::random::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  if (kind == EnsembleKind::real_gaussian) {
    const double sd = std::sqrt(variance);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = Complex(sd * normal(engine), 0.0);
  } else {
    const double sd = std::sqrt(variance / 2.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double re = normal(engine);
        const double im = normal(engine);
        g(i, j) = Complex(sd * re, sd * im);
      }
  }
  return g;
}

ComplexMatrix sample_gaussian_matrix(int n, const VarianceProfile& profile, EnsembleKind kind,
                                     const SeedSpec& seed) {
  profile.validate();
  return sample_gaussian_entries(n, profile.variance(n), kind, seed);
}

ComplexMatrix sample_bounded_norm_matrix(int n, double g, const SeedSpec& seed, NormKind norm) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("sample_bounded_norm_matrix: g must be finite and > 0");
  }
  ComplexMatrix m = sample_gaussian_entries(n, 1.0, EnsembleKind::complex_gaussian, seed);
  const double current = norm == NormKind::hilbert_schmidt ? hs_norm(m) : operator_norm(m);
  m *= g / current;
  return m;
}

NormMomentSummary gaussian_norm_moment_check(int n, const VarianceProfile& profile, EnsembleKind kind,
                                             int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("gaussian_norm_moment_check: trials must be >= 1");
  NormMomentSummary out;
  out.n = n;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const auto g = sample_gaussian_matrix(n, profile, kind, {seed, static_cast<std::uint64_t>(t)});
    const double op = operator_norm(g);
    out.mean_op_norm += op;
    out.mean_op_norm_squared += op * op;
  }
  out.mean_op_norm /= trials;
  out.mean_op_norm_squared /= trials;
  out.scale = std::sqrt(static_cast<double>(n)) * std::pow(static_cast<double>(n), -profile.s);
  return out;
}

}  // namespace specreg
