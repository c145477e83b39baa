#pragma once

#include "psplit/double_splitting.hpp"
#include "psplit/matrix.hpp"
#include "psplit/splitting.hpp"
#include "psplit/tolerances.hpp"

#include <optional>
#include <span>
#include <vector>

namespace psplit {

/// Iterates with norm above this are reported as divergence.
inline constexpr double kDivergenceGuard = 1e12;

struct IterationTrace {
    /// One entry per iteration: the iterate it produced.
    std::vector<Vector> iterates;
    /// |x_k - x_{k-1}| for each iterate.
    std::vector<double> residual_history;
    bool converged = false;
    bool diverged = false;
    std::size_t iterations_used = 0;
    Vector limit;
    /// A^+ b.
    Vector reference_solution;
    double distance_to_reference = 0.0;
    /// Single-splitting runs only: whether x0 lies in N(V). Reported, never enforced.
    std::optional<bool> x0_in_null_v;
};

/// A^+ b.
Vector min_norm_lsq(const Matrix& a, std::span<const double> b, const Tolerances& tol = {});

/**
 * Two-step iteration x_{k+1} = P^+R x_k - P^+S x_{k-1} + P^+b.
 *
 * Runs until both |x_{k+1} - x_k| <= solve_tol and |x_{k+1} - A^+b| <=
 * solve_tol * (1 + |A^+b|), or until max_iter iterations, or until an iterate
 * exceeds kDivergenceGuard. `converged` requires the step test together with
 * |x - A^+b| <= 10 * solve_tol * (1 + |A^+b|).
 */
IterationTrace solve_double(const ProperDoubleSplitting& d, std::span<const double> b,
                            std::span<const double> x0, std::span<const double> x1,
                            const Tolerances& tol = {});
IterationTrace solve_double(const ProperDoubleSplitting& d, std::span<const double> b,
                            const Tolerances& tol = {});

/// One-step iteration x_{k+1} = U^+V x_k + U^+b, same stopping rules.
IterationTrace solve_single(const ProperSplitting& s, std::span<const double> b,
                            std::span<const double> x0, const Tolerances& tol = {});
IterationTrace solve_single(const ProperSplitting& s, std::span<const double> b,
                            const Tolerances& tol = {});

} // namespace psplit
