#include "specreg/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specreg/model_matrices.hpp"
#include "specreg/spectra.hpp"

namespace specreg {

namespace {

void require_block_shape(int b, int n, const char* what) {
  if (b < 1 || n < 2 || b > n - 1) throw std::invalid_argument(std::string(what) + ": need 1 <= b <= N-1");
}

// Relative slack for floating comparisons of quantities that agree exactly in
// real arithmetic.
constexpr double kRoundoff = 1e-10;

ComplexMatrix power(const ComplexMatrix& m, int k) {
  ComplexMatrix acc = m;
  for (int i = 1; i < k; ++i) acc = acc * m;
  return acc;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

BoundTerms prop_lb2_bound(int b, int n, double g) {
  require_block_shape(b, n, "prop_lb2_bound");
  if (!(g >= 0.0)) throw std::invalid_argument("prop_lb2_bound: g must be >= 0");
  BoundTerms t;
  t.b = b;
  t.n = n;
  t.g = g;
  const double nn = static_cast<double>(n);
  t.hypothesis_ok = g < 1.0 / (3.0 * b * std::sqrt(nn));
  t.s1 = (b + 4) / 2.0 * binomial(b + 1, (b + 1) / 2) * std::pow(nn, (b + 2) / 4.0) * std::pow(g, b / 2.0);
  t.s2 = static_cast<double>(b) * b * nn * g;
  const double root = 1.0 / (b + 1);
  t.explicit_bound = std::pow(t.s1, root) + std::pow(t.s2, root);
  return t;
}

SimplifiedBound prop_lb_bound(int b, int n, double g) {
  require_block_shape(b, n, "prop_lb_bound");
  if (!(g >= 0.0)) throw std::invalid_argument("prop_lb_bound: g must be >= 0");
  SimplifiedBound out;
  const double nn = static_cast<double>(n);
  out.value = std::pow(nn * g, 1.0 / b);
  out.hypothesis_ok = g < 1.0 / (3.0 * b * std::sqrt(nn));
  out.regime_ok = b >= std::log(nn);
  return out;
}

CorollaryBound cor_lb_bound(double gamma, double b, int n) {
  if (n < 2 || !(b > 0.0)) throw std::invalid_argument("cor_lb_bound: need N >= 2 and b > 0");
  CorollaryBound out;
  const double log_n = std::log(static_cast<double>(n));
  out.value = std::exp(-gamma + 2.0 * log_n / b);
  out.gamma_ok = gamma > 2.5;
  out.b_ok = b >= log_n;
  return out;
}

namespace {

BoundReport run_bound_trials(int b, const std::vector<ComplexMatrix>& perturbations, double g) {
  const int n = static_cast<int>(perturbations.front().rows());
  BoundReport report;
  report.terms = prop_lb2_bound(b, n, g);
  report.simplified_bound = prop_lb_bound(b, n, g).value;
  report.trials = static_cast<int>(perturbations.size());
  const ComplexMatrix t = block_nilpotent(b, n);
  const double root = 1.0 / (b + 1);
  const double backbone = report.terms.s1 + report.terms.s2;

  for (std::size_t i = 0; i < perturbations.size(); ++i) {
    const ComplexMatrix m = t + perturbations[i];
    BoundTrial trial;
    trial.trial = i;
    const auto spec = eigenvalues(m);
    trial.residual = spec.residual;
    trial.degraded = spec.degraded;
    for (const auto& v : spec.values) trial.rho = std::max(trial.rho, std::abs(v));
    trial.power_norm = hs_norm(power(m, b + 1));

    report.degraded_trials += trial.degraded ? 1 : 0;
    report.observed_max_rho = std::max(report.observed_max_rho, trial.rho);
    report.observed_max_power_norm = std::max(report.observed_max_power_norm, trial.power_norm);
    if (trial.power_norm > backbone * (1.0 + kRoundoff)) report.power_backbone_ok = false;
    if (trial.rho > std::pow(trial.power_norm, root) * (1.0 + kRoundoff) + 1e-12) report.gelfand_ok = false;
    report.per_trial.push_back(trial);
  }
  report.pass = report.observed_max_rho <= report.terms.explicit_bound;
  return report;
}

}  // namespace

BoundReport check_bound_with(int b, const std::vector<ComplexMatrix>& perturbations) {
  if (perturbations.empty()) throw std::invalid_argument("check_bound_with: need at least one perturbation");
  const auto n = perturbations.front().rows();
  require_block_shape(b, static_cast<int>(n), "check_bound_with");
  double g = 0.0;
  for (const auto& r : perturbations) {
    require_square_finite(r, "check_bound_with");
    if (r.rows() != n) throw std::invalid_argument("check_bound_with: perturbations must share one size");
    g = std::max(g, hs_norm(r));
  }
  return run_bound_trials(b, perturbations, g);
}

BoundReport check_bound_empirical(int b, int n, double g, int trials, std::uint64_t seed) {
  require_block_shape(b, n, "check_bound_empirical");
  if (trials < 1) throw std::invalid_argument("check_bound_empirical: trials must be >= 1");
  if (!(g >= 0.0)) throw std::invalid_argument("check_bound_empirical: g must be >= 0");
  std::vector<ComplexMatrix> rs;
  rs.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    if (g == 0.0) {
      rs.push_back(ComplexMatrix::Zero(n, n));
    } else {
      rs.push_back(sample_bounded_norm_matrix(n, g, {seed, static_cast<std::uint64_t>(t)}));
    }
  }
  return run_bound_trials(b, rs, g);
}

CorollaryReport check_corollary_empirical(double gamma, int b, int n, int trials, std::uint64_t seed,
                                          EnsembleKind kind, double slack) {
  require_block_shape(b, n, "check_corollary_empirical");
  if (trials < 1) throw std::invalid_argument("check_corollary_empirical: trials must be >= 1");
  CorollaryReport report;
  report.bound = cor_lb_bound(gamma, b, n);
  report.slack = slack;
  report.trials = trials;
  const ComplexMatrix t = block_nilpotent(b, n);
  const double scale = std::exp(-gamma * b);
  const double threshold = 1.0 / (3.0 * b * std::sqrt(static_cast<double>(n)));
  for (int i = 0; i < trials; ++i) {
    CorollaryTrial trial;
    trial.trial = static_cast<std::uint64_t>(i);
    const ComplexMatrix r = scale * sample_gaussian_entries(n, 1.0, kind, {seed, trial.trial});
    trial.perturbation_hs = hs_norm(r);
    trial.norm_event = trial.perturbation_hs < threshold;
    trial.explicit_bound = prop_lb2_bound(b, n, trial.perturbation_hs).explicit_bound;
    const auto spec = eigenvalues(t + r);
    trial.degraded = spec.degraded;
    for (const auto& v : spec.values) trial.rho = std::max(trial.rho, std::abs(v));
    report.observed_max_rho = std::max(report.observed_max_rho, trial.rho);
    if (!trial.norm_event) {
      ++report.norm_event_failures;
    } else {
      if (trial.rho > report.bound.value + slack) ++report.violations;
      if (trial.rho > trial.explicit_bound) ++report.explicit_violations;
    }
    report.per_trial.push_back(trial);
  }
  return report;
}

LemmaProductReport verify_lemma_secsum1_with(int b, int k, const std::vector<ComplexMatrix>& perturbations) {
  if (perturbations.empty()) throw std::invalid_argument("verify_lemma_secsum1: need at least one R");
  const int n = static_cast<int>(perturbations.front().rows());
  require_block_shape(b, n, "verify_lemma_secsum1");
  if (k < 1 || k > 20) throw std::invalid_argument("verify_lemma_secsum1: need 1 <= k <= 20");

  LemmaProductReport report;
  report.b = b;
  report.n = n;
  report.k = k;
  const ComplexMatrix t = block_nilpotent(b, n);

  for (const auto& r : perturbations) {
    const double r_norm = hs_norm(r);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      const int ones = std::popcount(mask);
      if (2 * ones < k + 1) continue;
      // Bit i (from the left) set means factor i is T.
      ComplexMatrix prod = ((mask >> (k - 1)) & 1u) ? t : r;
      for (int i = 1; i < k; ++i) prod = prod * (((mask >> (k - 1 - i)) & 1u) ? t : r);
      const double lhs = hs_norm(prod);
      const int groups = k - ones + 1;
      const double rhs =
          std::pow(nilpotent_power_norm_closed(b, n, ones / groups), groups) * std::pow(r_norm, k - ones);
      double ratio = 0.0;
      if (rhs > 0.0) {
        ratio = lhs / rhs;
      } else if (lhs > 0.0) {
        ratio = std::numeric_limits<double>::infinity();
      }
      report.worst_ratio = std::max(report.worst_ratio, ratio);
      ++report.cases;
    }
  }
  report.pass = report.worst_ratio <= 1.0 + 1e-12;
  return report;
}

LemmaProductReport verify_lemma_secsum1(int b, int n, int k, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_lemma_secsum1: trials must be >= 1");
  std::vector<ComplexMatrix> rs;
  for (int t = 0; t < trials; ++t) {
    rs.push_back(sample_gaussian_entries(n, 1.0 / n, EnsembleKind::complex_gaussian,
                                         {seed, static_cast<std::uint64_t>(t)}));
  }
  return verify_lemma_secsum1_with(b, k, rs);
}

SecsumReport verify_lemma_secsum(int b, int n, double g) {
  require_block_shape(b, n, "verify_lemma_secsum");
  if (!(g > 0.0)) throw std::invalid_argument("verify_lemma_secsum: g must be > 0");
  SecsumReport report;
  report.b = b;
  report.n = n;
  report.g = g;
  report.threshold = 2.0 / (std::exp(1.5) * std::sqrt(static_cast<double>(n)) * b);
  report.hypothesis_ok = g <= report.threshold;
  report.pass = true;
  auto norm = [&](int a) { return a == 0 ? std::sqrt(static_cast<double>(n)) : nilpotent_power_norm_closed(b, n, a); };

  for (int ell = (b + 3) / 2; ell <= b - 1; ++ell) {
    SecsumEntry e;
    e.ell = ell;
    const int q = (ell + 1) / (b - ell + 1);
    e.admissible = norm(q) > 0.0;
    const int p = ell / (b - ell + 2);
    e.lhs = binomial(b + 1, ell) * std::pow(norm(p), b - ell + 2) * std::pow(g, b - ell + 1);
    e.rhs = binomial(b + 1, ell + 1) * std::pow(norm(q), b - ell + 1) * std::pow(g, b - ell);
    e.holds = e.lhs <= e.rhs * (1.0 + kRoundoff);
    if (e.admissible && !e.holds) report.pass = false;
    report.entries.push_back(e);
  }
  return report;
}

RelationReport verify_norm_relations(int b, int n) {
  require_block_shape(b, n, "verify_norm_relations");
  RelationReport report;
  report.b = b;
  report.n = n;
  // Squared norms are exact integers; T^0 = I has squared norm N.
  auto sq = [&](int a) -> std::int64_t { return a == 0 ? n : nilpotent_power_norm_squared_closed(b, n, a); };
  for (int a = 3; a <= b; ++a) {
    for (int c = 1; c + 2 <= a; ++c) {
      ++report.relation1_cases;
      if (!(sq(a) * sq(c) < sq(a - 1) * sq(c + 1))) report.relation1_ok = false;
    }
  }
  for (int a = 1; a <= b + 2; ++a) {
    ++report.relation2_cases;
    if (!(sq(a) <= sq(a - 1))) report.relation2_ok = false;
  }
  return report;
}

}  // namespace specreg
