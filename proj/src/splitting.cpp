#include "psplit/splitting.hpp"

#include "psplit/error.hpp"
#include "psplit/linalg.hpp"

namespace psplit {

ProperSplitting::ProperSplitting(Matrix a, Matrix u, Matrix v, Matrix u_pinv, Matrix a_pinv)
    : a_(std::move(a)),
      u_(std::move(u)),
      v_(std::move(v)),
      u_pinv_(std::move(u_pinv)),
      a_pinv_(std::move(a_pinv))
{
}

SubspaceResiduals subspace_residuals(const Matrix& a, const Matrix& a_pinv, const Matrix& u,
                                     const Matrix& u_pinv)
{
    return {max_abs_diff(a * a_pinv, u * u_pinv), max_abs_diff(a_pinv * a, u_pinv * u)};
}

ProperSplitting make_proper_splitting(const Matrix& a, const Matrix& u, const Tolerances& tol)
{
    tol.validate();
    if (a.rows() != u.rows() || a.cols() != u.cols())
        throw Error(ErrorCode::ShapeMismatch, "A and U must have the same shape");
    Matrix a_pinv = pinv(a, tol);
    Matrix u_pinv = pinv(u, tol);
    const SubspaceResiduals r = subspace_residuals(a, a_pinv, u, u_pinv);
    if (r.range > tol.eq_abs_tol || r.null > tol.eq_abs_tol)
        throw NotProperError(r.range, r.null, tol.eq_abs_tol);
    Matrix v = u - a;
    return ProperSplitting(a, u, std::move(v), std::move(u_pinv), std::move(a_pinv));
}

std::string_view to_string(SplittingClass c)
{
    switch (c) {
    case SplittingClass::ProperRegular: return "ProperRegular";
    case SplittingClass::ProperWeakRegular: return "ProperWeakRegular";
    case SplittingClass::ProperOnly: return "ProperOnly";
    }
    return "Unknown";
}

SplittingClass classify_single(const ProperSplitting& s, const Tolerances& tol)
{
    if (!is_nonneg(s.u_pinv(), tol))
        return SplittingClass::ProperOnly;
    if (is_nonneg(s.v(), tol))
        return SplittingClass::ProperRegular;
    if (is_nonneg(s.u_pinv() * s.v(), tol))
        return SplittingClass::ProperWeakRegular;
    return SplittingClass::ProperOnly;
}

ProjectorIdentityReport check_projector_identities(const ProperSplitting& s, const Tolerances& tol)
{
    const SubspaceResiduals r = subspace_residuals(s.a(), s.a_pinv(), s.u(), s.u_pinv());
    return {r.range, r.null, r.range <= tol.eq_abs_tol && r.null <= tol.eq_abs_tol};
}

SemimonotoneReport check_semimonotone_equivalence(const ProperSplitting& s, const Tolerances& tol)
{
    const Matrix h = s.u_pinv() * s.v();
    if (!is_nonneg(s.u_pinv(), tol) || !is_nonneg(h, tol))
        throw Error(ErrorCode::HypothesisUnmet,
                    "semi-monotone equivalence needs a weak regular proper splitting");
    SemimonotoneReport rep;
    rep.a_pinv_nonneg = is_nonneg(s.a_pinv(), tol);
    rep.a_pinv_v_nonneg = is_nonneg(s.a_pinv() * s.v(), tol);
    rep.rho = spectral_radius(h, tol);
    rep.rho_below_one = rep.rho < 1.0;
    rep.all_agree =
        rep.a_pinv_nonneg == rep.a_pinv_v_nonneg && rep.a_pinv_nonneg == rep.rho_below_one;
    return rep;
}

} // namespace psplit
