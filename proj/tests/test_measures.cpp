#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "specreg/brown_reference.hpp"
#include "specreg/measures.hpp"
#include "specreg/model_matrices.hpp"
#include "specreg/noise.hpp"

using namespace specreg;

namespace {

std::vector<double> random_atoms(std::mt19937_64& gen, int count) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> a;
  for (int i = 0; i < count; ++i) a.push_back(u(gen));
  return a;
}

}  // namespace

TEST_CASE("empirical measures") {
  const auto d0 = empirical_from_points(std::vector<double>{0.0});
  CHECK(d0.size() == 1);
  CHECK(d0.weight() == 1.0);
  CHECK_THROWS_AS(empirical_from_points(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_from_points(std::vector<double>{1.0, NAN}), std::invalid_argument);

  const Complex delta = 1e-3;
  const auto roots = empirical_from_points(exact_perturbed_shift_spectrum(10, delta).values);
  for (const auto& z : roots.atoms()) CHECK(std::abs(z) == doctest::Approx(std::pow(1e-3, 0.1)));

  std::vector<Complex> pts{{1, 2}, {-1, 0}, {0.5, -3}, {1, -2}};
  auto shuffled = pts;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(empirical_from_points(pts) == empirical_from_points(shuffled));
}

TEST_CASE("hermitized shifted measure") {
  const Complex z(0.4, -0.3);
  const auto zero = hermitized_shifted_measure(z * ComplexMatrix::Identity(3, 3), z);
  for (double x : zero.atoms()) CHECK(x == 0.0);
  const auto t2 = hermitized_shifted_measure(nilpotent_shift(2), 0.0);
  CHECK(t2.weight() == 0.25);
  const std::vector<double> expect{-1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(t2.atoms()[i] - expect[i]) < 1e-15);

  const ComplexMatrix m = sample_gaussian_entries(20, 0.05, EnsembleKind::complex_gaussian, {3, 0});
  const auto nu = hermitized_shifted_measure(m, z);
  const auto& a = nu.atoms();
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] + a[a.size() - 1 - k]) < 1e-12);
}

TEST_CASE("interval mass and Stieltjes transform") {
  const auto p = empirical_from_points(std::vector<double>{-1.0, 0.0, 0.0, 2.0});
  CHECK(interval_mass(p, 0.0, 2.0) == 0.75);
  CHECK(interval_mass(p, -0.5, 0.5) == 0.5);
  const Complex z(0.5, 1.0);
  const Complex expect = 0.25 * (1.0 / (z + 1.0) + 2.0 / z + 1.0 / (z - 2.0));
  CHECK(std::abs(stieltjes(p, z) - expect) < 1e-15);
}

TEST_CASE("cauchy smoothing closed forms") {
  const auto d0 = empirical_from_points(std::vector<double>{0.0});
  for (double gamma : {0.01, 0.1, 1.0}) {
    for (double eta : {0.05, 0.5, 3.0}) {
      const double expect = 2.0 / std::numbers::pi * std::atan(eta / gamma);
      CHECK(std::abs(cauchy_smooth_interval(d0, gamma, -eta, eta) - expect) < 1e-6);
    }
  }
  std::mt19937_64 gen(11);
  for (int i = 0; i < 10; ++i) {
    const auto atoms = random_atoms(gen, 7);
    const auto p = empirical_from_points(atoms);
    for (double gamma : {0.01, 0.3}) {
      CHECK(std::abs(cauchy_smooth_interval(p, gamma, -1.0, 0.7) - oracle::cauchy_interval(atoms, gamma, -1.0, 0.7)) <
            1e-8);
    }
    // Whole-line mass: interval covering the support by 1e3 gamma.
    const double gamma = 0.01;
    CHECK(std::abs(cauchy_smooth_interval(p, gamma, -2.0 - 1e3 * gamma, 2.0 + 1e3 * gamma) - 1.0) < 1e-3);
  }
  CHECK(cauchy_smooth_interval(d0, 1e-4, -1.0, 1.0) > 0.9999);
  CHECK_THROWS_AS(cauchy_smooth_interval(d0, 0.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cauchy_smooth_interval(d0, 0.1, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("smoothing sandwich") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-1.5, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = empirical_from_points(random_atoms(gen, 5 + i));
    for (double gamma : {0.1, 0.01}) {
      const double eta = 5.0 * gamma;
      const double a = u(gen);
      const double b = a + 0.2 + 2.0 * eta;
      const double mass = interval_mass(p, a, b);
      CHECK(mass <= cauchy_smooth_interval(p, gamma, a - eta, b + eta) + gamma / eta);
      CHECK(mass >= cauchy_smooth_interval(p, gamma, a + eta, b - eta) - gamma / eta);
    }
  }
}

TEST_CASE("smoothed density") {
  const auto p = empirical_from_points(std::vector<double>{-0.5, 0.5});
  const auto d = smoothed_density(p, 0.2, {-1.0, 0.0, 0.5});
  CHECK(d.gamma == 0.2);
  REQUIRE(d.values.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(d.values[i] == doctest::Approx(std::abs(stieltjes(p, {d.grid[i], 0.2}).imag())));
  CHECK_THROWS_AS(smoothed_density(p, -1.0, {0.0}), std::invalid_argument);
}

TEST_CASE("log tail") {
  const auto far = empirical_from_points(std::vector<double>{0.5, 0.7, 2.0});
  CHECK(log_tail(far, 0.1).value == 0.0);
  const auto one = empirical_from_points(std::vector<double>{std::exp(-1.0), 1.0});
  CHECK(log_tail(one, 0.5).value == doctest::Approx(0.5));
  const auto with_zero = empirical_from_points(std::vector<double>{0.0, 0.0, 0.01, 0.5});
  const auto t = log_tail(with_zero, 0.1);
  CHECK(t.zero_atoms == 2);
  CHECK(t.value == doctest::Approx(0.25 * std::log(100.0)));
  CHECK_THROWS_AS(log_tail(far, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(log_tail(far, 0.0), std::invalid_argument);

  const VarianceProfile prof{1.0, 7.0, 3.5};
  const ComplexMatrix m = nilpotent_shift(60) + sample_gaussian_matrix(60, prof, EnsembleKind::complex_gaussian, {4, 0});
  const auto nu = hermitized_shifted_measure(m, 0.5);
  const auto t1 = log_tail(nu, 0.1), t2 = log_tail(nu, 0.01);
  CHECK(std::isfinite(t1.value));
  CHECK(t1.zero_atoms == 0);
  CHECK(t2.value <= t1.value);
}

TEST_CASE("distances to the circle law") {
  const CircleLaw law;
  const auto fourth = empirical_from_points(std::vector<Complex>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(radial_ks_distance(fourth, law) == 0.0);
  for (int n : {4, 5, 16, 101}) {
    const auto pts = oracle::roots_of(n, 1.0);
    // Rounded moduli may land one ulp off 1, which the exact distance registers.
    const double below = std::count_if(pts.begin(), pts.end(), [](Complex z) { return std::abs(z) < 1.0; });
    const double above = std::count_if(pts.begin(), pts.end(), [](Complex z) { return std::abs(z) > 1.0; });
    const auto roots = empirical_from_points(pts);
    CHECK(radial_ks_distance(roots, law) == doctest::Approx(std::max(below, above) / n));
    CHECK(angular_ks_distance(roots, law) <= 1.0 / n + 1e-12);
  }
  const auto d0 = empirical_from_points(std::vector<Complex>{0.0});
  CHECK(radial_ks_distance(d0, law) == 1.0);

  std::vector<Complex> pts{{0.5, 0.1}, {-0.7, 0.9}, {1.2, -0.3}, {0.0, -1.0}};
  auto perm = pts;
  std::rotate(perm.begin(), perm.begin() + 1, perm.end());
  CHECK(radial_ks_distance(empirical_from_points(pts), law) == radial_ks_distance(empirical_from_points(perm), law));
  CHECK(angular_ks_distance(empirical_from_points(pts), law) == angular_ks_distance(empirical_from_points(perm), law));
  // Moduli 0.51, 1, 1.14, 1.24: the empirical distribution function is 1/2 on [1, 1.14).
  CHECK(radial_ks_distance(empirical_from_points(pts), law) == doctest::Approx(0.5));
  CHECK(mean_modulus(empirical_from_points(pts)) == doctest::Approx((std::abs(pts[0]) + std::abs(pts[1]) + std::abs(pts[2]) + 1.0) / 4));
  CHECK(max_modulus(empirical_from_points(pts)) == doctest::Approx(std::abs(pts[2])));
}
