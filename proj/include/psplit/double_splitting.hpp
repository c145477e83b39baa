#pragma once

#include "psplit/matrix.hpp"
#include "psplit/splitting.hpp"
#include "psplit/tolerances.hpp"

#include <optional>
#include <string_view>

namespace psplit {

/// A = P - R + S with R(A) = R(P) and N(A) = N(P).
class ProperDoubleSplitting {
public:
    const Matrix& a() const noexcept { return a_; }
    const Matrix& p() const noexcept { return p_; }
    const Matrix& r() const noexcept { return r_; }
    const Matrix& s() const noexcept { return s_; }
    const Matrix& p_pinv() const noexcept { return p_pinv_; }
    const Matrix& a_pinv() const noexcept { return a_pinv_; }
    /// P^+R and P^+S.
    const Matrix& p_pinv_r() const noexcept { return p_pinv_r_; }
    const Matrix& p_pinv_s() const noexcept { return p_pinv_s_; }
    std::size_t n() const noexcept { return a_.cols(); }

private:
    friend ProperDoubleSplitting make_pds(const Matrix&, const Matrix&, const Matrix&,
                                          const Matrix&, const Tolerances&);
    friend ProperDoubleSplitting make_pds_square(const Matrix&, const Matrix&, const Matrix&,
                                                 const Matrix&, const Tolerances&);
    ProperDoubleSplitting(Matrix a, Matrix p, Matrix r, Matrix s, Matrix p_pinv, Matrix a_pinv);

    Matrix a_, p_, r_, s_, p_pinv_, a_pinv_, p_pinv_r_, p_pinv_s_;
};

/// Throws ShapeMismatch, DecompositionMismatchError (A != P - R + S), or
/// NotProperError.
ProperDoubleSplitting make_pds(const Matrix& a, const Matrix& p, const Matrix& r, const Matrix& s,
                               const Tolerances& tol = {});

/// Square nonsingular variant: P^+ and A^+ are ordinary inverses computed by
/// LU. Throws NotSquare or NotInvertible when A or P is singular.
ProperDoubleSplitting make_pds_square(const Matrix& a, const Matrix& p, const Matrix& r,
                                      const Matrix& s, const Tolerances& tol = {});

enum class DoubleSplittingClass { RegularProperDouble, WeakRegularProperDouble, ProperDoubleOnly };
std::string_view to_string(DoubleSplittingClass c);

/// Individual class predicates; classify_double picks the strongest.
struct DoubleClassPredicates {
    bool p_pinv_nonneg = false;      // P^+ >= 0
    bool r_nonneg = false;           // R >= 0
    bool minus_s_nonneg = false;     // -S >= 0
    bool p_pinv_r_nonneg = false;    // P^+R >= 0
    bool minus_p_pinv_s_nonneg = false;  // -P^+S >= 0

    bool regular() const { return p_pinv_nonneg && r_nonneg && minus_s_nonneg; }
    bool weak_regular() const { return p_pinv_nonneg && p_pinv_r_nonneg && minus_p_pinv_s_nonneg; }
};
DoubleClassPredicates class_predicates(const ProperDoubleSplitting& d, const Tolerances& tol = {});

DoubleSplittingClass classify_double(const ProperDoubleSplitting& d, const Tolerances& tol = {});

/// Regular or weak regular (regular implies weak regular).
bool at_least_weak_regular(const ProperDoubleSplitting& d, const Tolerances& tol = {});

/// The 2n x 2n companion matrix [[P^+R, -P^+S], [I, 0]].
Matrix iteration_matrix(const ProperDoubleSplitting& d);

/// U = P, V = R - S.
ProperSplitting induced_single(const ProperDoubleSplitting& d);

struct ConvergenceReport {
    double rho_w = 0.0;          // rho(W)
    double rho_single = 0.0;     // rho(P^+(R - S))
    bool weak_regular = false;
    /// Present only for weak regular splittings: whether rho(W) < 1 and
    /// rho(P^+(R-S)) < 1 agree.
    std::optional<bool> biconditional_holds;
    bool a_pinv_nonneg = false;
    /// Present when A^+ >= 0 and the splitting is weak regular: the predicted
    /// rho(W) < 1 and whether it was observed.
    std::optional<bool> convergence_predicted;
    std::optional<bool> convergence_observed;
};
ConvergenceReport check_convergence(const ProperDoubleSplitting& d, const Tolerances& tol = {});

} // namespace psplit
