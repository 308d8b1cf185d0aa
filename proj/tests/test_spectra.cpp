#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "oracles.hpp"
#include "specreg/model_matrices.hpp"
#include "specreg/noise.hpp"
#include "specreg/spectra.hpp"

using namespace specreg;

namespace {

ComplexMatrix random_matrix(int n, std::uint64_t trial, double variance = 1.0) {
  return sample_gaussian_entries(n, variance, EnsembleKind::complex_gaussian, {99, trial});
}

}  // namespace

TEST_CASE("eigenvalues") {
  for (const auto& v : eigenvalues(nilpotent_shift(8)).values) CHECK(std::abs(v) == 0.0);
  const auto four = eigenvalues(nilpotent_shift(4) + corner_perturbation(4, 1.0 / 16));
  CHECK(four.values.size() == 4);
  CHECK(oracle::hausdorff(four.values, {0.5, Complex(0, 0.5), -0.5, Complex(0, -0.5)}) < 1e-12);
  CHECK_FALSE(four.degraded);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = Complex(0, 2);
  CHECK(oracle::hausdorff(eigenvalues(d).values, {1.0, Complex(0, 2)}) < 1e-15);

  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(eigenvalues(bad), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("eigenvalue sum equals trace") {
  for (int n : {5, 30, 80}) {
    const ComplexMatrix m = random_matrix(n, n) + block_nilpotent(std::min(3, n - 1), n);
    const auto r = eigenvalues(m);
    Complex sum = 0.0;
    for (const auto& v : r.values) sum += v;
    CHECK(std::abs(sum - m.trace()) <= n * kDefaultSpectralTolerance * operator_norm(m));
    CHECK(r.residual < kDefaultSpectralTolerance);
  }
}

TEST_CASE("singular values") {
  const auto t2 = singular_values(nilpotent_shift(2));
  CHECK(t2.values[0] == doctest::Approx(1.0));
  CHECK(std::abs(t2.values[1]) < 1e-15);
  for (double v : singular_values(ComplexMatrix::Zero(5, 5)).values) CHECK(v == 0.0);

  ComplexMatrix dft(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) dft(j, k) = std::polar(0.5, -2.0 * std::numbers::pi * j * k / 4);
  for (double v : singular_values(dft).values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  const auto r = singular_values(random_matrix(40, 1));
  CHECK(std::is_sorted(r.values.rbegin(), r.values.rend()));
}

TEST_CASE("spectral radius and norms") {
  CHECK(spectral_radius(block_nilpotent(3, 12)) == 0.0);
  CHECK(spectral_radius(nilpotent_shift(4) + corner_perturbation(4, 1.0 / 16)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spectral_radius(ComplexMatrix::Identity(6, 6)) == doctest::Approx(1.0));
  CHECK(hs_norm(block_nilpotent(2, 6)) == 2.0);
  CHECK(operator_norm(nilpotent_shift(9)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  CHECK(hs_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("hermitization") {
  const auto z = hermitize(ComplexMatrix::Zero(3, 3));
  CHECK(z.matrix() == ComplexMatrix::Zero(6, 6));
  auto t2 = hermitize(nilpotent_shift(2)).eigenvalues();
  const std::vector<double> expect{-1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(t2[i] - expect[i]) < 1e-15);

  for (int n : {7, 32, 128}) {
    const ComplexMatrix c = random_matrix(n, 100 + n);
    const auto h = hermitize(c);
    CHECK(h.base_dim() == n);
    CHECK(h.matrix() == h.matrix().adjoint());
    const auto ev = h.eigenvalues();
    auto sv = singular_values(c).values;
    std::vector<double> sym;
    for (double s : sv) {
      sym.push_back(s);
      sym.push_back(-s);
    }
    std::sort(sym.begin(), sym.end());
    double worst = 0.0, asym = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
      worst = std::max(worst, std::abs(ev[k] - sym[k]));
      asym = std::max(asym, std::abs(ev[k] + ev[2 * n - 1 - k]));
    }
    CHECK(worst < 1e-10 * sv.front());
    CHECK(asym < 1e-10 * sv.front());
  }
}

TEST_CASE("cauchy transform") {
  const Complex z(0.3, 0.7);
  CHECK(std::abs(cauchy_transform(ComplexMatrix::Zero(4, 4), z) - 1.0 / z) < 1e-15);
  CHECK(std::abs(cauchy_transform(nilpotent_shift(2), Complex(0, 2)) - Complex(0, -0.45)) < 1e-15);
  CHECK_THROWS_AS(cauchy_transform(nilpotent_shift(2), Complex(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(cauchy_transform(nilpotent_shift(2), Complex(1, -1)), std::invalid_argument);

  const ComplexMatrix c = random_matrix(16, 5, 1.0 / 16);
  const CauchyTransform g(c, Complex(0.2, -0.1));
  CHECK(std::abs(g.evaluate(z) - cauchy_transform(c, z, Complex(0.2, -0.1))) < 1e-15);
  for (double y : {0.01, 0.1, 1.0, 10.0}) {
    const Complex v = g.evaluate(Complex(0.4, y));
    CHECK(v.imag() < 0.0);
    CHECK(std::abs(cauchy_transform(c, Complex(0, y))) <= 1.0 / y * (1.0 + 1e-14));
  }
}

TEST_CASE("resolvent Lipschitz bound") {
  for (int i = 0; i < 30; ++i) {
    const int n = 4 + 2 * i;
    const ComplexMatrix c = random_matrix(n, 200 + i, 1.0 / n);
    const ComplexMatrix d = c + random_matrix(n, 300 + i, 0.01 / n);
    const double op = operator_norm(c - d);
    for (double y : {0.1, 0.5, 1.0}) {
      const Complex z(0.05 * i - 0.5, y);
      CHECK(std::abs(cauchy_transform(c, z) - cauchy_transform(d, z)) <= op / (y * y));
    }
  }
}

TEST_CASE("smallest singular value") {
  const Complex z(0.3, -0.2);
  CHECK(smallest_singular_value(-z * ComplexMatrix::Identity(5, 5), z) == 0.0);
  CHECK(smallest_singular_value(nilpotent_shift(4) + corner_perturbation(4, 1.0 / 16), 0.0) > 0.0);
  const ComplexMatrix m = random_matrix(12, 9);
  ComplexMatrix shifted = m;
  shifted.diagonal().array() += z;
  CHECK(smallest_singular_value(m, z) == doctest::Approx(singular_values(shifted).values.back()));
}
