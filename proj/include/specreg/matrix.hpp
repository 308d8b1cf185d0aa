#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

// LAPACKE pulls in <complex.h>, whose `I` macro breaks later headers.
#ifdef I
#undef I
#endif

namespace specreg {

using Complex = std::complex<double>;

/// Square dense complex matrix. Every model, noise and perturbation matrix in
/// the library is carried in this type.
using ComplexMatrix = Eigen::MatrixXcd;

/// Throws std::invalid_argument unless `m` is square with finite entries.
void require_square_finite(const ComplexMatrix& m, const char* what);

}  // namespace specreg
