#pragma once

#include <cstddef>
#include <optional>

namespace psplit {

/// Numerical thresholds shared by every module.
struct Tolerances {
    /// Absolute slack for entrywise >= 0 tests.
    double nonneg_slack = 1e-10;
    /// Relative singular value cutoff. Unset means max(m, n) * machine epsilon.
    std::optional<double> rank_rel_cutoff;
    /// Entrywise tolerance for matrix equalities.
    double eq_abs_tol = 1e-10;
    /// Stopping tolerance for eigenvector refinement and spectral comparisons.
    double spectral_tol = 1e-10;
    /// Step and reference tolerance for the iterative solvers.
    double solve_tol = 1e-10;
    std::size_t max_iter = 10000;

    /// Throws Error(InvalidConfig) if a field is out of range.
    void validate() const;

    double rank_cutoff_for(std::size_t rows, std::size_t cols) const;
};

} // namespace psplit
