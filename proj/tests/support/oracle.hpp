#pragma once

// Reference computations backed by Eigen. Tests compare the library's own
// SVD, inverse and QR eigenvalue code against these.

#include "psplit/matrix.hpp"

#include <complex>
#include <vector>

namespace psplit::testing {

Matrix oracle_pinv(const Matrix& a);
std::vector<std::complex<double>> oracle_eigenvalues(const Matrix& m);
double oracle_rho(const Matrix& m);
Vector oracle_lstsq_min_norm(const Matrix& a, std::span<const double> b);
/// All min(m, n) singular values, descending.
Vector oracle_singular_values(const Matrix& a);
/// sigma_max / sigma_min over all min(m, n) singular values.
double oracle_condition(const Matrix& a);

} // namespace psplit::testing
