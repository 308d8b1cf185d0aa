#pragma once

#include <cstdint>
#include <vector>

#include "specreg/matrix.hpp"
#include "specreg/noise.hpp"

namespace specreg {

/// Explicit finite-N spectral-radius bound for T_{b,N} + R with ||R||_HS <= g.
///
///   S1 = ((b+4)/2) C(b+1, floor((b+1)/2)) N^{(b+2)/4} g^{b/2}
///   S2 = b^2 N g
///   ||(T + R)^{b+1}||_HS <= S1 + S2,  rho(T + R) <= S1^{1/(b+1)} + S2^{1/(b+1)}.
///
/// Valid under g < 1/(3 b sqrt(N)); `hypothesis_ok` records whether it holds.
struct BoundTerms {
  int b = 0;
  int n = 0;
  double g = 0.0;
  bool hypothesis_ok = false;
  double s1 = 0.0;
  double s2 = 0.0;
  double explicit_bound = 0.0;
};

BoundTerms prop_lb2_bound(int b, int n, double g);

/// Leading-order bound (N g)^{1/b}. The vanishing correction is not included;
/// only prop_lb2_bound is a finite-N guarantee.
struct SimplifiedBound {
  double value = 0.0;
  bool hypothesis_ok = false;  // g < 1/(3 b sqrt N)
  bool regime_ok = false;      // b >= ln N
};

SimplifiedBound prop_lb_bound(int b, int n, double g);

/// exp(-gamma + 2 ln N / b) for the exp(-gamma b) scaled Gaussian perturbation.
/// At the boundary b = ln N the value is exp(2 - gamma), which is below
/// exp(-1/2) exactly when gamma > 5/2.
struct CorollaryBound {
  double value = 0.0;
  bool gamma_ok = false;  // gamma > 5/2
  bool b_ok = false;      // b >= ln N
};

CorollaryBound cor_lb_bound(double gamma, double b, int n);

struct BoundTrial {
  std::uint64_t trial = 0;
  double rho = 0.0;
  /// ||(T + R)^{b+1}||_HS
  double power_norm = 0.0;
  double residual = 0.0;
  bool degraded = false;
};

struct BoundReport {
  BoundTerms terms;
  double simplified_bound = 0.0;
  int trials = 0;
  double observed_max_rho = 0.0;
  double observed_max_power_norm = 0.0;
  int degraded_trials = 0;
  /// ||(T+R)^{b+1}||_HS <= S1 + S2 in every trial.
  bool power_backbone_ok = true;
  /// rho <= ||(T+R)^{b+1}||_HS^{1/(b+1)} in every trial.
  bool gelfand_ok = true;
  /// observed_max_rho <= explicit_bound.
  bool pass = false;
  std::vector<BoundTrial> per_trial;
};

/// Monte Carlo harness: `trials` draws of R with ||R||_HS = g (g = 0 uses R = 0),
/// trial t seeded by (seed, t).
BoundReport check_bound_empirical(int b, int n, double g, int trials, std::uint64_t seed);

/// Same harness with caller-supplied perturbations.
BoundReport check_bound_with(int b, const std::vector<ComplexMatrix>& perturbations);

struct CorollaryTrial {
  std::uint64_t trial = 0;
  double rho = 0.0;
  double perturbation_hs = 0.0;
  /// ||R||_HS < 1/(3 b sqrt N), the event on which the finite-N bound applies.
  bool norm_event = false;
  double explicit_bound = 0.0;
  bool degraded = false;
};

struct CorollaryReport {
  CorollaryBound bound;
  double slack = 0.0;
  int trials = 0;
  int norm_event_failures = 0;
  /// Trials on the norm event whose rho exceeds bound + slack.
  int violations = 0;
  /// Trials on the norm event whose rho exceeds the finite-N explicit bound.
  int explicit_violations = 0;
  double observed_max_rho = 0.0;
  std::vector<CorollaryTrial> per_trial;
};

/// rho(T_{b,N} + exp(-gamma b) G) for G with unit-variance i.i.d. entries.
CorollaryReport check_corollary_empirical(double gamma, int b, int n, int trials, std::uint64_t seed,
                                          EnsembleKind kind = EnsembleKind::complex_gaussian,
                                          double slack = 0.05);

struct LemmaProductReport {
  int b = 0;
  int n = 0;
  int k = 0;
  long cases = 0;
  double worst_ratio = 0.0;
  bool pass = false;
};

/// For every pattern lambda in {0,1}^k with l ones and 2l >= k+1, and every R:
///   ||prod_i T^{lambda_i} R^{1-lambda_i}||_HS
///     <= ||T^{floor(l/(k-l+1))}||_HS^{k-l+1} ||R||_HS^{k-l}.
/// The ratio lhs/rhs is reported; 0/0 counts as 0.
LemmaProductReport verify_lemma_secsum1(int b, int n, int k, int trials, std::uint64_t seed);
LemmaProductReport verify_lemma_secsum1_with(int b, int k, const std::vector<ComplexMatrix>& perturbations);

/// Consecutive-term comparison in the high-l part of the expansion of
/// ||(T+R)^{b+1}||:
///   C(b+1, l) ||T^{floor(l/(b-l+2))}||^{b-l+2} g^{b-l+1}
///     <= C(b+1, l+1) ||T^{floor((l+1)/(b-l+1))}||^{b-l+1} g^{b-l}
/// for ceil((b+2)/2) <= l <= b-1 whenever the right-hand power norm is nonzero,
/// under g <= 2 / (e^{3/2} sqrt(N) b).
struct SecsumEntry {
  int ell = 0;
  bool admissible = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct SecsumReport {
  int b = 0;
  int n = 0;
  double g = 0.0;
  double threshold = 0.0;
  bool hypothesis_ok = false;
  std::vector<SecsumEntry> entries;
  /// Every admissible entry holds.
  bool pass = false;
};

SecsumReport verify_lemma_secsum(int b, int n, double g);

/// Exhaustive closed-form checks of the power-norm relations:
///   relation1: ||T^a|| ||T^c|| < ||T^{a-1}|| ||T^{c+1}||  for 3 <= c+2 <= a <= b
///   relation2: ||T^a|| <= ||T^{a-1}||                     for a >= 1 (T^0 = I)
struct RelationReport {
  int b = 0;
  int n = 0;
  long relation1_cases = 0;
  long relation2_cases = 0;
  bool relation1_ok = true;
  bool relation2_ok = true;
};

RelationReport verify_norm_relations(int b, int n);

double binomial(int n, int k);

}  // namespace specreg
