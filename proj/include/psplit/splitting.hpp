#pragma once

#include "psplit/matrix.hpp"
#include "psplit/tolerances.hpp"

#include <string_view>

namespace psplit {

class ProperDoubleSplitting;

/// A = U - V with R(A) = R(U) and N(A) = N(U). Only constructible through
/// make_proper_splitting, which validates both subspace conditions.
class ProperSplitting {
public:
    const Matrix& a() const noexcept { return a_; }
    const Matrix& u() const noexcept { return u_; }
    const Matrix& v() const noexcept { return v_; }
    /// U^+, computed once at validation.
    const Matrix& u_pinv() const noexcept { return u_pinv_; }
    const Matrix& a_pinv() const noexcept { return a_pinv_; }

private:
    friend ProperSplitting make_proper_splitting(const Matrix&, const Matrix&, const Tolerances&);
    friend ProperSplitting induced_single(const ProperDoubleSplitting&);
    ProperSplitting(Matrix a, Matrix u, Matrix v, Matrix u_pinv, Matrix a_pinv);

    Matrix a_, u_, v_, u_pinv_, a_pinv_;
};

/// Range and null-space residuals of U against A:
/// |AA^+ - UU^+| and |A^+A - U^+U| (max-abs entry).
struct SubspaceResiduals {
    double range = 0.0;
    double null = 0.0;
};
SubspaceResiduals subspace_residuals(const Matrix& a, const Matrix& a_pinv, const Matrix& u,
                                     const Matrix& u_pinv);

/// V := U - A, then checks proper-ness. Throws ShapeMismatch or NotProperError.
ProperSplitting make_proper_splitting(const Matrix& a, const Matrix& u, const Tolerances& tol = {});

enum class SplittingClass { ProperRegular, ProperWeakRegular, ProperOnly };
std::string_view to_string(SplittingClass c);

/// Regular: U^+ >= 0 and V >= 0. Weak regular: U^+ >= 0 and U^+V >= 0.
SplittingClass classify_single(const ProperSplitting& s, const Tolerances& tol = {});

struct ProjectorIdentityReport {
    double range_residual = 0.0;  // |AA^+ - UU^+|
    double null_residual = 0.0;   // |A^+A - U^+U|
    bool passed = false;
};
ProjectorIdentityReport check_projector_identities(const ProperSplitting& s,
                                                   const Tolerances& tol = {});

/**
 * For a weak regular proper splitting the three statements
 *   (i) A^+ >= 0, (ii) A^+V >= 0, (iii) rho(U^+V) < 1
 * are equivalent. This evaluates each one independently and reports whether
 * they agree. Throws HypothesisUnmet if s is not (at least) weak regular.
 */
struct SemimonotoneReport {
    bool a_pinv_nonneg = false;
    bool a_pinv_v_nonneg = false;
    bool rho_below_one = false;
    double rho = 0.0;  // rho(U^+V)
    bool all_agree = false;
};
SemimonotoneReport check_semimonotone_equivalence(const ProperSplitting& s,
                                                  const Tolerances& tol = {});

} // namespace psplit
