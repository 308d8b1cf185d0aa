#include "specreg/model_matrices.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specreg {

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
  }
}

ComplexMatrix nilpotent_shift(int n) {
  if (n < 1) throw std::invalid_argument("nilpotent_shift: N must be >= 1");
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) t(i, i + 1) = 1.0;
  return t;
}

ComplexMatrix block_nilpotent(int b, int n) {
  if (n < 2 || b < 1 || b > n - 1) {
    throw std::invalid_argument("block_nilpotent: need 1 <= b <= N-1 (got b=" + std::to_string(b) +
                                ", N=" + std::to_string(n) + ")");
  }
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  const int block = b + 1;
  const int covered = (n / block) * block;
  // 1-based superdiagonal index i is zero iff block | i, or i lies in the
  // trailing partial block.
  for (int i = 1; i <= n - 1; ++i) {
    if (i % block != 0 && i < covered) t(i - 1, i) = 1.0;
  }
  return t;
}

ComplexMatrix corner_perturbation(int n, Complex delta) {
  if (n < 2) throw std::invalid_argument("corner_perturbation: N must be >= 2");
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(n - 1, 0) = delta;
  return e;
}

std::int64_t nilpotent_power_norm_squared_closed(int b, int n, int a) {
  if (a < 1 || b < 1 || b > n - 1) {
    throw std::invalid_argument("nilpotent_power_norm_closed: need a >= 1 and 1 <= b <= N-1");
  }
  if (a >= b + 1) return 0;
  return static_cast<std::int64_t>(b - a + 1) * (n / (b + 1));
}

double nilpotent_power_norm_closed(int b, int n, int a) {
  return std::sqrt(static_cast<double>(nilpotent_power_norm_squared_closed(b, n, a)));
}

ShiftSpectrum exact_perturbed_shift_spectrum(int n, Complex delta) {
  if (n < 2) throw std::invalid_argument("exact_perturbed_shift_spectrum: N must be >= 2");
  ShiftSpectrum out;
  out.values.reserve(n);
  if (delta == Complex(0.0, 0.0)) {
    out.degenerate = true;
    out.values.assign(n, Complex(0.0, 0.0));
    return out;
  }
  const double radius = std::pow(std::abs(delta), 1.0 / n);
  const double phase = std::arg(delta);
  for (int j = 1; j <= n; ++j) {
    out.values.push_back(std::polar(radius, (phase + 2.0 * std::numbers::pi * j) / n));
  }
  return out;
}

int Word::degree() const {
  int d = 0;
  for (const auto& l : letters) d += l.alpha + l.beta;
  return d;
}

int Word::imbalance() const {
  int d = 0;
  for (const auto& l : letters) d += l.alpha - l.beta;
  return d;
}

void Word::validate() const {
  if (letters.empty()) throw std::invalid_argument("Word: at least one letter required");
  for (const auto& l : letters) {
    if (l.alpha < 0 || l.beta < 0) throw std::invalid_argument("Word: negative exponent");
  }
  if (degree() < 1) throw std::invalid_argument("Word: total degree must be >= 1");
}

Complex word_trace(const ComplexMatrix& m, const Word& w) {
  require_square_finite(m, "word_trace");
  w.validate();
  const ComplexMatrix adj = m.adjoint();
  const auto n = m.rows();
  ComplexMatrix acc = ComplexMatrix::Identity(n, n);
  for (const auto& l : w.letters) {
    for (int k = 0; k < l.alpha; ++k) acc = acc * m;
    for (int k = 0; k < l.beta; ++k) acc = acc * adj;
  }
  return acc.trace() / static_cast<double>(n);
}

}  // namespace specreg
