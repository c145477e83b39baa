#pragma once

#include "psplit/double_splitting.hpp"
#include "psplit/tolerances.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psplit {

/// The three spectral-radius comparison theorems for two proper double
/// splittings A = P1 - R1 + S1 = P2 - R2 + S2 of one matrix. Each concludes
/// rho(W1) <= rho(W2) < 1 under its hypotheses plus one of the branch
/// conditions (i) P1^+R1 >= P2^+R2 or (ii) P1^+S1 >= P2^+S2.
enum class TheoremId {
    /// d1 regular with P1P1^+ >= 0, d2 weak regular, P1^+ >= P2^+.
    RegularVsWeak,
    /// e in R(A), d1 weak regular, d2 regular with P2^+ free of zero rows and
    /// P2P2^+ >= 0, P1^+ >= P2^+.
    WeakVsRegular,
    /// Both weak regular, P1^+A >= P2^+A.
    WeakVsWeak,
};
std::string_view to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(std::string_view s);

enum class Branch { ConditionI, ConditionII, Both, Neither };
std::string_view to_string(Branch b);

/**
 * One checked condition.
 *
 * `residual` is the quantity the check thresholds:
 *   - ordering / nonnegativity labels: the smallest entry of the difference
 *     (holds iff >= -nonneg_slack),
 *   - e_in_range_a: |(I - AA^+)e| (holds iff <= eq_abs_tol * sqrt(m)),
 *   - p2_pinv_no_zero_row: the smallest row max-abs of P2^+ (holds iff > nonneg_slack),
 *   - class labels (d1_regular, ...): the smallest entry over the class's matrices.
 */
struct HypothesisVerdict {
    std::string label;
    bool holds = false;
    double residual = 0.0;
};

struct ComparisonReport {
    TheoremId theorem = TheoremId::RegularVsWeak;
    /// Required hypotheses first, then any informational entries
    /// (r1_geq_r2 in square mode), then branch_i and branch_ii.
    std::vector<HypothesisVerdict> hypotheses;
    Branch branch_used = Branch::Neither;
    double rho1 = 0.0;
    double rho2 = 0.0;
    bool conclusion_predicted = false;
    /// rho1 <= rho2 + spectral_tol and rho2 < 1 - spectral_tol.
    bool conclusion_observed = false;

    bool square_mode = false;
    /// Square mode, RegularVsWeak only: P1^{-1} >= P2^{-1} together with
    /// R1 >= R2 (and R1 >= 0, P2^{-1} >= 0) forces branch (i).
    std::optional<bool> r_order_implies_branch_i;

    const HypothesisVerdict* find(std::string_view label) const;
};

struct ComparisonOptions {
    /// Treat A as square nonsingular and use ordinary inverses throughout.
    /// Throws NotInvertible when A is not square and nonsingular.
    bool square_corollary = false;
};

/// All three throw DifferentA when d1 and d2 split different matrices.
ComparisonReport compare_regular_vs_weak(const ProperDoubleSplitting& d1,
                                         const ProperDoubleSplitting& d2,
                                         const Tolerances& tol = {},
                                         const ComparisonOptions& opts = {});
ComparisonReport compare_weak_vs_regular(const ProperDoubleSplitting& d1,
                                         const ProperDoubleSplitting& d2,
                                         const Tolerances& tol = {},
                                         const ComparisonOptions& opts = {});
ComparisonReport compare_weak_vs_weak(const ProperDoubleSplitting& d1,
                                      const ProperDoubleSplitting& d2,
                                      const Tolerances& tol = {},
                                      const ComparisonOptions& opts = {});

ComparisonReport compare(TheoremId theorem, const ProperDoubleSplitting& d1,
                         const ProperDoubleSplitting& d2, const Tolerances& tol = {},
                         const ComparisonOptions& opts = {});

} // namespace psplit
