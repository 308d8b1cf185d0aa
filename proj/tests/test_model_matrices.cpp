#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "specreg/model_matrices.hpp"
#include "specreg/spectra.hpp"

using namespace specreg;

namespace {

std::vector<double> superdiagonal(const ComplexMatrix& m) {
  std::vector<double> d;
  for (int i = 0; i + 1 < m.rows(); ++i) d.push_back(m(i, i + 1).real());
  return d;
}

bool only_superdiagonal(const ComplexMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (j != i + 1 && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

TEST_CASE("nilpotent_shift") {
  CHECK(nilpotent_shift(1) == ComplexMatrix::Zero(1, 1));
  const ComplexMatrix t3 = nilpotent_shift(3);
  CHECK(t3(0, 1) == Complex(1.0));
  CHECK(t3(1, 2) == Complex(1.0));
  CHECK(t3.cwiseAbs().sum() == 2.0);
  const ComplexMatrix t4 = nilpotent_shift(4);
  CHECK((t4 * t4.adjoint()).trace().real() / 4.0 == 0.75);
  CHECK_THROWS_AS(nilpotent_shift(0), std::invalid_argument);
}

TEST_CASE("block_nilpotent superdiagonal pattern") {
  CHECK(superdiagonal(block_nilpotent(1, 4)) == std::vector<double>{1, 0, 1});
  CHECK(superdiagonal(block_nilpotent(2, 6)) == std::vector<double>{1, 1, 0, 1, 1});
  for (int n : {2, 5, 9}) CHECK(block_nilpotent(n - 1, n) == nilpotent_shift(n));
  // Trailing partial block is a block of zeros.
  CHECK(superdiagonal(block_nilpotent(2, 7)) == std::vector<double>{1, 1, 0, 1, 1, 0});
  CHECK(superdiagonal(block_nilpotent(3, 10)) == std::vector<double>{1, 1, 1, 0, 1, 1, 1, 0, 0});
  CHECK(only_superdiagonal(block_nilpotent(3, 10)));
  CHECK_THROWS_AS(block_nilpotent(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(block_nilpotent(0, 4), std::invalid_argument);
}

TEST_CASE("block_nilpotent matches the integer oracle and has nilpotency order b+1") {
  for (int b = 1; b <= 6; ++b) {
    for (int n = b + 1; n <= 24; ++n) {
      const ComplexMatrix t = block_nilpotent(b, n);
      const auto ref = oracle::block_nilpotent_int(b, n);
      bool same = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) same = same && t(i, j) == Complex(static_cast<double>(ref[i][j]));
      CHECK(same);
      ComplexMatrix p = t;
      for (int a = 1; a <= b; ++a) p = p * t;
      CHECK(p.cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("corner_perturbation") {
  CHECK(corner_perturbation(3, 0.0) == ComplexMatrix::Zero(3, 3));
  const ComplexMatrix e = corner_perturbation(4, 1.0 / 16);
  CHECK(e(3, 0) == Complex(1.0 / 16));
  CHECK(e.cwiseAbs().sum() == doctest::Approx(1.0 / 16));
  CHECK(operator_norm(corner_perturbation(7, Complex(0.3, -0.4))) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(corner_perturbation(1, 1.0), std::invalid_argument);
}

TEST_CASE("nilpotent_power_norm_closed") {
  CHECK(nilpotent_power_norm_closed(2, 6, 1) == 2.0);
  CHECK(nilpotent_power_norm_closed(3, 8, 4) == 0.0);
  for (int b = 1; b <= 5; ++b)
    for (int n = b + 1; n <= 30; ++n) CHECK(nilpotent_power_norm_closed(b, n, b) == std::sqrt(double(n / (b + 1))));
  for (int b = 1; b <= 8; ++b)
    for (int n = b + 1; n <= 40; ++n)
      for (int a = 1; a <= b + 2; ++a)
        CHECK(nilpotent_power_norm_squared_closed(b, n, a) == oracle::power_hs_squared(b, n, a));
}

TEST_CASE("exact_perturbed_shift_spectrum") {
  auto four = exact_perturbed_shift_spectrum(4, 1.0 / 16).values;
  CHECK(oracle::hausdorff(four, {0.5, Complex(0, 0.5), -0.5, Complex(0, -0.5)}) < 1e-15);
  auto two = exact_perturbed_shift_spectrum(2, 4.0).values;
  CHECK(oracle::hausdorff(two, {2.0, -2.0}) < 1e-15);
  for (const auto& v : exact_perturbed_shift_spectrum(9, std::polar(1.0, 0.7)).values) CHECK(std::abs(v) == doctest::Approx(1.0));
  const Complex delta(0.2, 0.1);
  CHECK(oracle::hausdorff(exact_perturbed_shift_spectrum(7, delta).values, oracle::roots_of(7, delta)) < 1e-14);
  const auto zero = exact_perturbed_shift_spectrum(5, 0.0);
  CHECK(zero.degenerate);
  CHECK(zero.values.size() == 5);
  for (const auto& v : zero.values) CHECK(v == Complex(0.0));
}

TEST_CASE("exact spectrum agrees with the eigensolver for N <= 256") {
  for (int n : {4, 16, 64, 256}) {
    const Complex delta = std::pow(double(n), -3.0);
    const auto numeric = eigenvalues(nilpotent_shift(n) + corner_perturbation(n, delta));
    CHECK(oracle::hausdorff(numeric.values, oracle::roots_of(n, delta)) < 1e-8);
  }
}

TEST_CASE("word_trace") {
  const Word tt{{{1, 1}}};
  CHECK(word_trace(nilpotent_shift(4), tt) == Complex(0.75));
  CHECK(word_trace(nilpotent_shift(10), Word{{{1, 0}}}) == Complex(0.0));
  double prev = 0.0;
  for (int n : {16, 64, 256}) {
    const double v = word_trace(nilpotent_shift(n), Word{{{2, 1}, {0, 1}}}).real();
    CHECK(v > prev);
    prev = v;
  }
  CHECK(Word{{{2, 1}, {0, 3}}}.degree() == 6);
  CHECK(Word{{{2, 1}, {0, 3}}}.imbalance() == -2);
  CHECK_THROWS_AS(word_trace(nilpotent_shift(3), Word{}), std::invalid_argument);
  CHECK_THROWS_AS(word_trace(nilpotent_shift(3), Word{{{0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(word_trace(nilpotent_shift(3), Word{{{-1, 2}}}), std::invalid_argument);
}
