#include "psplit/comparison.hpp"

#include "psplit/error.hpp"
#include "psplit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace psplit {

namespace {

HypothesisVerdict nonneg_verdict(std::string label, const Matrix& m, const Tolerances& tol)
{
    const double margin = m.min_entry();
    return {std::move(label), margin >= -tol.nonneg_slack, margin};
}

HypothesisVerdict geq_verdict(std::string label, const Matrix& a, const Matrix& b,
                              const Tolerances& tol)
{
    return nonneg_verdict(std::move(label), a - b, tol);
}

HypothesisVerdict class_verdict(std::string label, std::initializer_list<Matrix> parts,
                                const Tolerances& tol)
{
    double margin = std::numeric_limits<double>::infinity();
    for (const Matrix& m : parts)
        margin = std::min(margin, m.min_entry());
    return {std::move(label), margin >= -tol.nonneg_slack, margin};
}

HypothesisVerdict regular_verdict(std::string label, const ProperDoubleSplitting& d,
                                  const Tolerances& tol)
{
    return class_verdict(std::move(label), {d.p_pinv(), d.r(), -d.s()}, tol);
}

HypothesisVerdict weak_regular_verdict(std::string label, const ProperDoubleSplitting& d,
                                       const Tolerances& tol)
{
    return class_verdict(std::move(label), {d.p_pinv(), d.p_pinv_r(), -d.p_pinv_s()}, tol);
}

HypothesisVerdict range_contains_ones(const ProperDoubleSplitting& d, const Tolerances& tol)
{
    const std::size_t m = d.a().rows();
    const Vector e(m, 1.0);
    const Matrix proj = d.a() * d.a_pinv();
    Vector res = proj * e;
    for (std::size_t i = 0; i < m; ++i)
        res[i] = e[i] - res[i];
    const double r = norm2(res);
    return {"e_in_range_a", r <= tol.eq_abs_tol * std::sqrt(static_cast<double>(m)), r};
}

HypothesisVerdict no_zero_row(const Matrix& m, const Tolerances& tol)
{
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.rows(); ++i)
        smallest = std::min(smallest, norm_inf(m.row(i)));
    if (m.rows() == 0)
        smallest = 0.0;
    return {"p2_pinv_no_zero_row", !has_zero_row(m, tol), smallest};
}

// Rebuilds the pair with ordinary inverses when square mode is requested.
struct Pair {
    ProperDoubleSplitting d1;
    ProperDoubleSplitting d2;
};

Pair prepare(const ProperDoubleSplitting& d1, const ProperDoubleSplitting& d2,
             const Tolerances& tol, const ComparisonOptions& opts)
{
    if (d1.a().rows() != d2.a().rows() || d1.a().cols() != d2.a().cols() ||
        max_abs_diff(d1.a(), d2.a()) > tol.eq_abs_tol)
        throw Error(ErrorCode::DifferentA, "the two double splittings split different matrices");
    if (!opts.square_corollary)
        return {d1, d2};
    const Matrix& a = d1.a();
    if (!a.is_square() || rank(a, tol) < a.rows())
        throw Error(ErrorCode::NotInvertible, "square corollary mode needs a nonsingular square A");
    return {make_pds_square(a, d1.p(), d1.r(), d1.s(), tol),
            make_pds_square(a, d2.p(), d2.r(), d2.s(), tol)};
}

// Adds the branch verdicts, the spectral radii and the conclusion flags.
void finish(ComparisonReport& rep, const Pair& pr, std::size_t required, const Tolerances& tol)
{
    const HypothesisVerdict bi =
        geq_verdict("branch_i", pr.d1.p_pinv_r(), pr.d2.p_pinv_r(), tol);
    const HypothesisVerdict bii =
        geq_verdict("branch_ii", pr.d1.p_pinv_s(), pr.d2.p_pinv_s(), tol);
    rep.hypotheses.push_back(bi);
    rep.hypotheses.push_back(bii);

    bool branch_i = bi.holds;
    if (rep.r_order_implies_branch_i.value_or(false))
        branch_i = true;
    if (branch_i && bii.holds)
        rep.branch_used = Branch::Both;
    else if (branch_i)
        rep.branch_used = Branch::ConditionI;
    else if (bii.holds)
        rep.branch_used = Branch::ConditionII;
    else
        rep.branch_used = Branch::Neither;

    rep.rho1 = spectral_radius(iteration_matrix(pr.d1), tol);
    rep.rho2 = spectral_radius(iteration_matrix(pr.d2), tol);

    const bool all_required =
        std::all_of(rep.hypotheses.begin(), rep.hypotheses.begin() + required,
                    [](const HypothesisVerdict& v) { return v.holds; });
    rep.conclusion_predicted = all_required && rep.branch_used != Branch::Neither;
    rep.conclusion_observed =
        rep.rho1 <= rep.rho2 + tol.spectral_tol && rep.rho2 < 1.0 - tol.spectral_tol;
}

} // namespace

std::string_view to_string(TheoremId id)
{
    switch (id) {
    case TheoremId::RegularVsWeak: return "regular-vs-weak";
    case TheoremId::WeakVsRegular: return "weak-vs-regular";
    case TheoremId::WeakVsWeak: return "weak-vs-weak";
    }
    return "unknown";
}

std::optional<TheoremId> theorem_from_string(std::string_view s)
{
    for (TheoremId id : {TheoremId::RegularVsWeak, TheoremId::WeakVsRegular, TheoremId::WeakVsWeak})
        if (s == to_string(id))
            return id;
    return std::nullopt;
}

std::string_view to_string(Branch b)
{
    switch (b) {
    case Branch::ConditionI: return "condition_i";
    case Branch::ConditionII: return "condition_ii";
    case Branch::Both: return "both";
    case Branch::Neither: return "neither";
    }
    return "unknown";
}

const HypothesisVerdict* ComparisonReport::find(std::string_view label) const
{
    for (const auto& v : hypotheses)
        if (v.label == label)
            return &v;
    return nullptr;
}

ComparisonReport compare_regular_vs_weak(const ProperDoubleSplitting& d1,
                                         const ProperDoubleSplitting& d2, const Tolerances& tol,
                                         const ComparisonOptions& opts)
{
    const Pair pr = prepare(d1, d2, tol, opts);
    ComparisonReport rep;
    rep.theorem = TheoremId::RegularVsWeak;
    rep.square_mode = opts.square_corollary;
    rep.hypotheses = {
        nonneg_verdict("a_pinv_nonneg", pr.d1.a_pinv(), tol),
        regular_verdict("d1_regular", pr.d1, tol),
        nonneg_verdict("p1_p1_pinv_nonneg", pr.d1.p() * pr.d1.p_pinv(), tol),
        weak_regular_verdict("d2_weak_regular", pr.d2, tol),
        geq_verdict("p1_pinv_geq_p2_pinv", pr.d1.p_pinv(), pr.d2.p_pinv(), tol),
    };
    const std::size_t required = rep.hypotheses.size();
    if (opts.square_corollary) {
        // R1 >= 0 and P2^{-1} >= 0 give P1^{-1}R1 >= P2^{-1}R1 >= P2^{-1}R2.
        rep.hypotheses.push_back(geq_verdict("r1_geq_r2", pr.d1.r(), pr.d2.r(), tol));
        const bool implied = rep.hypotheses.back().holds && rep.hypotheses[4].holds &&
                             is_nonneg(pr.d1.r(), tol) && is_nonneg(pr.d2.p_pinv(), tol);
        rep.r_order_implies_branch_i = implied;
    }
    finish(rep, pr, required, tol);
    return rep;
}

ComparisonReport compare_weak_vs_regular(const ProperDoubleSplitting& d1,
                                         const ProperDoubleSplitting& d2, const Tolerances& tol,
                                         const ComparisonOptions& opts)
{
    const Pair pr = prepare(d1, d2, tol, opts);
    ComparisonReport rep;
    rep.theorem = TheoremId::WeakVsRegular;
    rep.square_mode = opts.square_corollary;
    rep.hypotheses = {
        range_contains_ones(pr.d1, tol),
        nonneg_verdict("a_pinv_nonneg", pr.d1.a_pinv(), tol),
        weak_regular_verdict("d1_weak_regular", pr.d1, tol),
        regular_verdict("d2_regular", pr.d2, tol),
        no_zero_row(pr.d2.p_pinv(), tol),
        nonneg_verdict("p2_p2_pinv_nonneg", pr.d2.p() * pr.d2.p_pinv(), tol),
        geq_verdict("p1_pinv_geq_p2_pinv", pr.d1.p_pinv(), pr.d2.p_pinv(), tol),
    };
    finish(rep, pr, rep.hypotheses.size(), tol);
    return rep;
}

ComparisonReport compare_weak_vs_weak(const ProperDoubleSplitting& d1,
                                      const ProperDoubleSplitting& d2, const Tolerances& tol,
                                      const ComparisonOptions& opts)
{
    const Pair pr = prepare(d1, d2, tol, opts);
    ComparisonReport rep;
    rep.theorem = TheoremId::WeakVsWeak;
    rep.square_mode = opts.square_corollary;
    rep.hypotheses = {
        nonneg_verdict("a_pinv_nonneg", pr.d1.a_pinv(), tol),
        weak_regular_verdict("d1_weak_regular", pr.d1, tol),
        weak_regular_verdict("d2_weak_regular", pr.d2, tol),
        geq_verdict("p1_pinv_a_geq_p2_pinv_a", pr.d1.p_pinv() * pr.d1.a(),
                    pr.d2.p_pinv() * pr.d2.a(), tol),
    };
    finish(rep, pr, rep.hypotheses.size(), tol);
    return rep;
}

ComparisonReport compare(TheoremId theorem, const ProperDoubleSplitting& d1,
                         const ProperDoubleSplitting& d2, const Tolerances& tol,
                         const ComparisonOptions& opts)
{
    switch (theorem) {
    case TheoremId::RegularVsWeak: return compare_regular_vs_weak(d1, d2, tol, opts);
    case TheoremId::WeakVsRegular: return compare_weak_vs_regular(d1, d2, tol, opts);
    case TheoremId::WeakVsWeak: return compare_weak_vs_weak(d1, d2, tol, opts);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown theorem");
}

} // namespace psplit
