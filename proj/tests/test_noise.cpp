#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "specreg/noise.hpp"
#include "specreg/spectra.hpp"

using namespace specreg;

TEST_CASE("variance profile admissibility") {
  VarianceProfile p{1.0, 7.0, 3.5};
  CHECK(p.admissible());
  CHECK_NOTHROW(p.validate());
  CHECK(p.variance(10) == doctest::Approx(1e-7));

  VarianceProfile low{1.0, 7.0, 0.4};
  CHECK_FALSE(low.admissible());
  try {
    low.validate();
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("upper") != std::string::npos);
  }
  VarianceProfile high{1.0, 7.0, 3.6};
  try {
    high.validate();
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("lower") != std::string::npos);
  }
  CHECK_THROWS_AS((VarianceProfile{1.0, 1.5, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(sample_gaussian_matrix(10, low, EnsembleKind::complex_gaussian, {1, 0}), std::invalid_argument);
}

TEST_CASE("ensemble kinds") {
  CHECK(beta(EnsembleKind::real_gaussian) == 1);
  CHECK(beta(EnsembleKind::complex_gaussian) == 2);
  CHECK(parse_ensemble(to_string(EnsembleKind::real_gaussian)) == EnsembleKind::real_gaussian);
  CHECK(parse_ensemble(to_string(EnsembleKind::complex_gaussian)) == EnsembleKind::complex_gaussian);
  CHECK_THROWS(parse_ensemble("uniform"));
}

TEST_CASE("gaussian samples: determinism, independence, variance") {
  const VarianceProfile p{1.0, 7.0, 3.5};
  const ComplexMatrix a = sample_gaussian_matrix(100, p, EnsembleKind::complex_gaussian, {42, 3});
  const ComplexMatrix b = sample_gaussian_matrix(100, p, EnsembleKind::complex_gaussian, {42, 3});
  const ComplexMatrix c = sample_gaussian_matrix(100, p, EnsembleKind::complex_gaussian, {42, 4});
  CHECK(a == b);
  CHECK(a != c);

  const double target = std::pow(100.0, -7.0);
  const double mean_sq = a.cwiseAbs2().mean();
  CHECK(std::abs(mean_sq / target - 1.0) < 0.1);

  // |G|^2 / sigma^2 is Exp(1) in the complex case: standard error 1/sqrt(N^2).
  CHECK(std::abs(mean_sq / target - 1.0) < 5.0 / 100.0);
  const double re_var = a.real().cwiseAbs2().mean();
  const double im_var = a.imag().cwiseAbs2().mean();
  CHECK(std::abs(re_var / (target / 2) - 1.0) < 5.0 * std::sqrt(2.0) / 100.0);
  CHECK(std::abs(im_var / (target / 2) - 1.0) < 5.0 * std::sqrt(2.0) / 100.0);

  const ComplexMatrix r = sample_gaussian_matrix(100, p, EnsembleKind::real_gaussian, {42, 3});
  CHECK(r.imag().cwiseAbs().maxCoeff() == 0.0);
  // |G|^2 / sigma^2 is chi^2_1 in the real case: standard error sqrt(2)/N.
  CHECK(std::abs(r.cwiseAbs2().mean() / target - 1.0) < 5.0 * std::sqrt(2.0) / 100.0);
}

TEST_CASE("bounded norm samples") {
  for (double g : {1e-6, 0.3, 2.0}) {
    const ComplexMatrix m = sample_bounded_norm_matrix(20, g, {7, 1});
    CHECK(std::abs(hs_norm(m) / g - 1.0) < 1e-14);
    const ComplexMatrix o = sample_bounded_norm_matrix(20, g, {7, 1}, NormKind::operator_norm);
    CHECK(std::abs(operator_norm(o) / g - 1.0) < 1e-12);
  }
  CHECK(sample_bounded_norm_matrix(20, 1.0, {7, 1}) != sample_bounded_norm_matrix(20, 1.0, {7, 2}));
  CHECK_THROWS_AS(sample_bounded_norm_matrix(20, 0.0, {7, 1}), std::invalid_argument);
}

TEST_CASE("gaussian operator norm moments") {
  const VarianceProfile p{1.0, 7.0, 3.5};
  const auto s64 = gaussian_norm_moment_check(64, p, EnsembleKind::complex_gaussian, 50, 5);
  CHECK(s64.trials == 50);
  CHECK(s64.scale == doctest::Approx(std::sqrt(64.0) * std::pow(64.0, -3.5)));
  CHECK(s64.mean_op_norm <= 4.0 * s64.scale);
  CHECK(s64.mean_op_norm_squared >= s64.mean_op_norm * s64.mean_op_norm);
  double prev = INFINITY;
  for (int n : {32, 64, 128}) {
    const double m = gaussian_norm_moment_check(n, p, EnsembleKind::complex_gaussian, 10, 5).mean_op_norm;
    CHECK(m < prev);
    prev = m;
  }
  CHECK_THROWS_AS(gaussian_norm_moment_check(8, p, EnsembleKind::complex_gaussian, 0, 5), std::invalid_argument);
}
