#pragma once

#include "psplit/matrix.hpp"
#include "psplit/tolerances.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace psplit {

/// Thin singular value decomposition A = U diag(sigma) V^T, sigma descending.
struct Svd {
    Matrix u;      // m x k
    Vector sigma;  // k = min(m, n)
    Matrix v;      // n x k
};

/// One-sided Jacobi SVD. Throws DecompositionFailure past tol.max_iter sweeps.
Svd svd(const Matrix& a, const Tolerances& tol = {});

/// Numerical rank under the configured relative cutoff.
std::size_t rank(const Matrix& a, const Tolerances& tol = {});

/// Moore-Penrose inverse.
Matrix pinv(const Matrix& a, const Tolerances& tol = {});

/// Residuals of the four Penrose equations for a candidate inverse x of a,
/// as max-abs entry norms: |AXA - A|, |XAX - X|, |(AX)^T - AX|, |(XA)^T - XA|.
struct PenroseResiduals {
    double axa = 0.0;
    double xax = 0.0;
    double ax_symmetric = 0.0;
    double xa_symmetric = 0.0;

    double max() const;
};
PenroseResiduals penrose_residuals(const Matrix& a, const Matrix& x);

/// Inverse of a square matrix via LU with partial pivoting.
/// Throws NotSquare, or NotInvertible when a pivot falls below the rank cutoff.
Matrix inverse(const Matrix& a, const Tolerances& tol = {});

/// Solves a x = b for square nonsingular a.
Vector solve_linear(const Matrix& a, std::span<const double> b, const Tolerances& tol = {});

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    double spectral_radius = 0.0;
    /// Perron vector scaled to unit max entry; only for entrywise nonnegative input.
    std::optional<Vector> dominant_vector;
};

/**
 * All eigenvalues of a square matrix.
 *
 * Balancing, Householder reduction to Hessenberg form, then Francis
 * double-shift QR. When the input is nonnegative (within nonneg_slack) a
 * nonnegative eigenvector for the spectral radius is obtained by shifted
 * inverse iteration with shift slightly above rho; the resolvent
 * (sigma I - M)^{-1} is then a nonnegative matrix, so iterates stay in the
 * nonnegative orthant.
 */
Spectrum eigenvalues(const Matrix& m, const Tolerances& tol = {});

double spectral_radius(const Matrix& m, const Tolerances& tol = {});

bool is_nonneg(const Matrix& m, const Tolerances& tol = {});
/// a >= b entrywise within nonneg_slack.
bool geq(const Matrix& a, const Matrix& b, const Tolerances& tol = {});
/// True iff some row has every |entry| <= nonneg_slack.
bool has_zero_row(const Matrix& m, const Tolerances& tol = {});

/// Orthogonal projector onto R(A): A A^+.
Matrix range_projector(const Matrix& a, const Tolerances& tol = {});
/// Orthogonal projector onto N(A): I - A^+ A.
Matrix nullspace_projector(const Matrix& a, const Tolerances& tol = {});

/// max |a - b| entrywise.
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace psplit
