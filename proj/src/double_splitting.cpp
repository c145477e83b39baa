#include "psplit/double_splitting.hpp"

#include "psplit/error.hpp"
#include "psplit/linalg.hpp"

namespace psplit {

namespace {

void require_shapes(const Matrix& a, const Matrix& p, const Matrix& r, const Matrix& s)
{
    for (const Matrix* m : {&p, &r, &s})
        if (m->rows() != a.rows() || m->cols() != a.cols())
            throw Error(ErrorCode::ShapeMismatch, "A, P, R and S must share one shape");
}

void require_decomposition(const Matrix& a, const Matrix& p, const Matrix& r, const Matrix& s,
                           const Tolerances& tol)
{
    const double residual = max_abs_diff(a, p - r + s);
    if (residual > tol.eq_abs_tol)
        throw DecompositionMismatchError(residual);
}

} // namespace

ProperDoubleSplitting::ProperDoubleSplitting(Matrix a, Matrix p, Matrix r, Matrix s,
                                             Matrix p_pinv, Matrix a_pinv)
    : a_(std::move(a)),
      p_(std::move(p)),
      r_(std::move(r)),
      s_(std::move(s)),
      p_pinv_(std::move(p_pinv)),
      a_pinv_(std::move(a_pinv))
{
    p_pinv_r_ = p_pinv_ * r_;
    p_pinv_s_ = p_pinv_ * s_;
}

ProperDoubleSplitting make_pds(const Matrix& a, const Matrix& p, const Matrix& r, const Matrix& s,
                               const Tolerances& tol)
{
    tol.validate();
    require_shapes(a, p, r, s);
    require_decomposition(a, p, r, s, tol);
    Matrix a_pinv = pinv(a, tol);
    Matrix p_pinv = pinv(p, tol);
    const SubspaceResiduals res = subspace_residuals(a, a_pinv, p, p_pinv);
    if (res.range > tol.eq_abs_tol || res.null > tol.eq_abs_tol)
        throw NotProperError(res.range, res.null, tol.eq_abs_tol);
    return ProperDoubleSplitting(a, p, r, s, std::move(p_pinv), std::move(a_pinv));
}

ProperDoubleSplitting make_pds_square(const Matrix& a, const Matrix& p, const Matrix& r,
                                      const Matrix& s, const Tolerances& tol)
{
    tol.validate();
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "square mode needs a square A");
    require_shapes(a, p, r, s);
    require_decomposition(a, p, r, s, tol);
    if (rank(a, tol) < a.rows())
        throw Error(ErrorCode::NotInvertible, "square mode needs a nonsingular A");
    if (rank(p, tol) < p.rows()) {
        const SubspaceResiduals res = subspace_residuals(a, pinv(a, tol), p, pinv(p, tol));
        throw NotProperError(res.range, res.null, tol.eq_abs_tol);
    }
    return ProperDoubleSplitting(a, p, r, s, inverse(p, tol), inverse(a, tol));
}

std::string_view to_string(DoubleSplittingClass c)
{
    switch (c) {
    case DoubleSplittingClass::RegularProperDouble: return "RegularProperDouble";
    case DoubleSplittingClass::WeakRegularProperDouble: return "WeakRegularProperDouble";
    case DoubleSplittingClass::ProperDoubleOnly: return "ProperDoubleOnly";
    }
    return "Unknown";
}

DoubleClassPredicates class_predicates(const ProperDoubleSplitting& d, const Tolerances& tol)
{
    DoubleClassPredicates out;
    out.p_pinv_nonneg = is_nonneg(d.p_pinv(), tol);
    out.r_nonneg = is_nonneg(d.r(), tol);
    out.minus_s_nonneg = is_nonneg(-d.s(), tol);
    out.p_pinv_r_nonneg = is_nonneg(d.p_pinv_r(), tol);
    out.minus_p_pinv_s_nonneg = is_nonneg(-d.p_pinv_s(), tol);
    return out;
}

DoubleSplittingClass classify_double(const ProperDoubleSplitting& d, const Tolerances& tol)
{
    const DoubleClassPredicates pr = class_predicates(d, tol);
    if (pr.regular())
        return DoubleSplittingClass::RegularProperDouble;
    if (pr.weak_regular())
        return DoubleSplittingClass::WeakRegularProperDouble;
    return DoubleSplittingClass::ProperDoubleOnly;
}

bool at_least_weak_regular(const ProperDoubleSplitting& d, const Tolerances& tol)
{
    return classify_double(d, tol) != DoubleSplittingClass::ProperDoubleOnly;
}

Matrix iteration_matrix(const ProperDoubleSplitting& d)
{
    const std::size_t n = d.n();
    Matrix w(2 * n, 2 * n);
    w.set_block(0, 0, d.p_pinv_r());
    w.set_block(0, n, -d.p_pinv_s());
    for (std::size_t i = 0; i < n; ++i)
        w(n + i, i) = 1.0;
    return w;
}

ProperSplitting induced_single(const ProperDoubleSplitting& d)
{
    return ProperSplitting(d.a(), d.p(), d.r() - d.s(), d.p_pinv(), d.a_pinv());
}

ConvergenceReport check_convergence(const ProperDoubleSplitting& d, const Tolerances& tol)
{
    ConvergenceReport rep;
    rep.rho_w = spectral_radius(iteration_matrix(d), tol);
    rep.rho_single = spectral_radius(d.p_pinv_r() - d.p_pinv_s(), tol);
    rep.weak_regular = at_least_weak_regular(d, tol);
    rep.a_pinv_nonneg = is_nonneg(d.a_pinv(), tol);
    if (rep.weak_regular) {
        rep.biconditional_holds = (rep.rho_w < 1.0) == (rep.rho_single < 1.0);
        if (rep.a_pinv_nonneg) {
            rep.convergence_predicted = true;
            rep.convergence_observed = rep.rho_w < 1.0;
        }
    }
    return rep;
}

} // namespace psplit
