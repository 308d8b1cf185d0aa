#include "specreg/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#ifdef I
#undef I
#endif

namespace specreg {

namespace {

double relative(double err, double scale) { return scale > 0.0 ? err / scale : err; }

}  // namespace

EigenResult eigenvalues(const ComplexMatrix& m, double tol) {
  require_square_finite(m, "eigenvalues");
  EigenResult out;
  Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/true);
  out.converged = schur.info() == Eigen::Success;
  const auto& t = schur.matrixT();
  out.values.reserve(m.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) out.values.push_back(t(i, i));
  const ComplexMatrix& u = schur.matrixU();
  ComplexMatrix recon = u * t.triangularView<Eigen::Upper>() * u.adjoint();
  out.residual = relative((recon - m).norm(), m.norm());
  out.degraded = !out.converged || !(out.residual <= tol);
  return out;
}

SingularResult singular_values(const ComplexMatrix& m, double tol) {
  require_square_finite(m, "singular_values");
  SingularResult out;
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.converged = svd.info() == Eigen::Success;
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  ComplexMatrix recon = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
  out.residual = relative((recon - m).norm(), m.norm());
  out.degraded = !out.converged || !(out.residual <= tol);
  return out;
}

double spectral_radius(const ComplexMatrix& m, double tol) {
  const auto spec = eigenvalues(m, tol);
  if (spec.degraded) {
    throw DegradedSpectrum("spectral_radius: eigensolve degraded (residual " + std::to_string(spec.residual) + ")");
  }
  double rho = 0.0;
  for (const auto& v : spec.values) rho = std::max(rho, std::abs(v));
  return rho;
}

double operator_norm(const ComplexMatrix& m) {
  require_square_finite(m, "operator_norm");
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues().maxCoeff() : 0.0;
}

double hs_norm(const ComplexMatrix& m) { return m.norm(); }

HermitizedMatrix::HermitizedMatrix(const ComplexMatrix& c) : base_dim_(static_cast<int>(c.rows())) {
  require_square_finite(c, "hermitize");
  const auto n = c.rows();
  h_ = ComplexMatrix::Zero(2 * n, 2 * n);
  h_.topRightCorner(n, n) = c;
  h_.bottomLeftCorner(n, n) = c.adjoint();
}

std::vector<double> HermitizedMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DegradedSpectrum("hermitize: Hermitian eigensolve did not converge");
  const auto& v = es.eigenvalues();
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

HermitizedMatrix hermitize(const ComplexMatrix& c) { return HermitizedMatrix(c); }

CauchyTransform::CauchyTransform(const ComplexMatrix& c, Complex xi) {
  require_square_finite(c, "cauchy_transform");
  ComplexMatrix shifted = c;
  shifted.diagonal().array() += xi;
  atoms_ = HermitizedMatrix(shifted).eigenvalues();
}

Complex CauchyTransform::evaluate(Complex z) const {
  if (!(z.imag() > 0.0)) throw std::invalid_argument("cauchy_transform: Im z must be > 0");
  Complex sum{0.0, 0.0};
  for (double a : atoms_) sum += 1.0 / (z - a);
  return sum / static_cast<double>(atoms_.size());
}

Complex cauchy_transform(const ComplexMatrix& c, Complex z, Complex xi) {
  if (!(z.imag() > 0.0)) throw std::invalid_argument("cauchy_transform: Im z must be > 0");
  return CauchyTransform(c, xi).evaluate(z);
}

double smallest_singular_value(const ComplexMatrix& m, Complex z) {
  require_square_finite(m, "smallest_singular_value");
  ComplexMatrix shifted = m;
  shifted.diagonal().array() += z;
  Eigen::BDCSVD<ComplexMatrix> svd(shifted);
  return svd.singularValues().minCoeff();
}

}  // namespace specreg
