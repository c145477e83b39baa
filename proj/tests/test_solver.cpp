#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "support/worked_examples.hpp"

#include "psplit/double_splitting.hpp"
#include "psplit/error.hpp"
#include "psplit/linalg.hpp"
#include "psplit/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace psplit;
using namespace psplit::testing;

namespace {

double dist(const Vector& x, const Vector& y) { return norm2(subtract(x, y)); }

void check_trace_shape(const IterationTrace& t, const Tolerances& tol)
{
    CHECK(t.residual_history.size() == t.iterations_used);
    CHECK(t.iterates.size() == t.iterations_used);
    if (t.converged) {
        REQUIRE_FALSE(t.residual_history.empty());
        CHECK(t.residual_history.back() <= tol.solve_tol);
    }
}

} // namespace

TEST_CASE("min_norm_lsq")
{
    SUBCASE("identity")
    {
        const Vector x = min_norm_lsq(Matrix::identity(3), Vector{1, 2, 3});
        CHECK(dist(x, Vector{1, 2, 3}) <= 1e-15);
    }
    SUBCASE("duplicated column")
    {
        const Vector x = min_norm_lsq(Matrix{{1, 0, 1}, {0, 1, 0}}, Vector{2, 2});
        CHECK(dist(x, Vector{1, 2, 1}) <= 1e-14);
    }
    SUBCASE("normal equations and orthogonality to the null space")
    {
        const Matrix a{{3, -2, 0}, {-1, 1, 0}};
        const Vector b{1, 0};
        const Vector x = min_norm_lsq(a, b);
        CHECK(dist(x, oracle_lstsq_min_norm(a, b)) <= 1e-13);
        const Matrix at = a.transpose();
        CHECK(dist(at * (a * x), at * b) <= 1e-13);
        CHECK(std::abs(x[2]) <= 1e-15);  // N(A) is spanned by e3
    }
    SUBCASE("length mismatch")
    {
        try {
            (void)min_norm_lsq(Matrix::identity(2), Vector{1, 2, 3});
            FAIL("expected ShapeMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ShapeMismatch);
        }
    }
}

TEST_CASE("solve_double on the identity splitting")
{
    const Matrix i = Matrix::identity(2);
    const auto d = make_pds(i, i, Matrix(2, 2), Matrix(2, 2));
    const Tolerances tol;
    const IterationTrace t = solve_double(d, Vector{1, 2}, tol);
    CHECK(t.converged);
    CHECK_FALSE(t.diverged);
    // The first step lands on the solution; the second confirms the step norm.
    CHECK(dist(t.iterates.front(), Vector{1, 2}) <= 1e-15);
    CHECK(t.iterations_used == 2);
    CHECK(dist(t.limit, Vector{1, 2}) <= 1e-15);
    check_trace_shape(t, tol);
    CHECK_FALSE(t.x0_in_null_v);
}

TEST_CASE("solve_double on the second example")
{
    const SplittingPair ex = duplicated_column_example();
    const auto d = make_pds(ex.a, ex.p1, ex.r1, ex.s1);
    const Vector b = ex.a * Vector{1, 1, 0};
    CHECK(b == Vector{1, 1});
    const Tolerances tol;
    const IterationTrace t = solve_double(d, b, tol);
    CHECK(t.converged);
    CHECK(dist(t.limit, Vector{0.5, 1, 0.5}) <= 1e-9);
    CHECK(dist(t.reference_solution, Vector{0.5, 1, 0.5}) <= 1e-14);
    CHECK(t.distance_to_reference <= 10 * tol.solve_tol * (1 + norm2(t.reference_solution)));
    check_trace_shape(t, tol);
}

TEST_CASE("solve_double on the first example, second splitting")
{
    const SplittingPair ex = converse_example();
    const auto d = make_pds(ex.a, ex.p2, ex.r2, ex.s2);
    const Vector b{1, 0};
    const Tolerances tol;
    const IterationTrace t = solve_double(d, b, tol);
    CHECK(t.converged);
    CHECK(t.iterations_used > 100);  // rho(W) is about 0.92
    CHECK(dist(t.limit, oracle_lstsq_min_norm(ex.a, b)) <= 1e-8);
    check_trace_shape(t, tol);
}

TEST_CASE("solve_double argument errors")
{
    const Matrix i = Matrix::identity(2);
    const auto d = make_pds(i, i, Matrix(2, 2), Matrix(2, 2));
    const Vector good{0, 0}, bad{0, 0, 0};
    CHECK_THROWS_AS(solve_double(d, bad), Error);
    CHECK_THROWS_AS(solve_double(d, good, bad, good), Error);
    CHECK_THROWS_AS(solve_double(d, good, good, bad), Error);
    Tolerances tol;
    tol.max_iter = 0;
    CHECK_THROWS_AS(solve_double(d, good, tol), Error);
}

TEST_CASE("solve_single")
{
    SUBCASE("1x1 with ratio one half")
    {
        const auto s = make_proper_splitting(Matrix{{1}}, Matrix{{2}});
        const Tolerances tol;
        const IterationTrace t = solve_single(s, Vector{1}, tol);
        CHECK(t.converged);
        CHECK(std::abs(t.limit[0] - 1.0) <= 1e-9);
        // Errors halve each step: x_k = 1 - 2^-k.
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(t.iterates[k][0] == doctest::Approx(1.0 - std::ldexp(1.0, -int(k + 1))));
        REQUIRE(t.x0_in_null_v);
        CHECK(*t.x0_in_null_v);  // x0 = 0 always lies in N(V)
        check_trace_shape(t, tol);
    }
    SUBCASE("induced single splitting of the first example")
    {
        const SplittingPair ex = converse_example();
        const auto s = induced_single(make_pds(ex.a, ex.p1, ex.r1, ex.s1));
        const Vector b{1, 0};
        const IterationTrace t = solve_single(s, b);
        CHECK(t.converged);
        CHECK(dist(t.limit, oracle_lstsq_min_norm(ex.a, b)) <= 1e-8);
    }
    SUBCASE("nonzero start outside N(V)")
    {
        const auto s = make_proper_splitting(Matrix{{1}}, Matrix{{2}});
        const IterationTrace t = solve_single(s, Vector{1}, Vector{5});
        REQUIRE(t.x0_in_null_v);
        CHECK_FALSE(*t.x0_in_null_v);
        CHECK(t.converged);
    }
    SUBCASE("divergence is flagged, not thrown")
    {
        // U = 1, V = 3 gives rho(U^+V) = 3.
        const auto s = make_proper_splitting(Matrix{{-2}}, Matrix{{1}});
        const IterationTrace t = solve_single(s, Vector{1});
        CHECK(t.diverged);
        CHECK_FALSE(t.converged);
        CHECK(t.iterations_used < 100);
    }
}

TEST_CASE("divergence of a double splitting with rho(W) > 1")
{
    const Matrix a{{1}};
    const auto d = make_pds(a, Matrix{{1}}, Matrix{{2}}, Matrix{{2}});  // W = [[2,-2],[1,0]]
    CHECK(check_convergence(d).rho_w > 1.0);
    const IterationTrace t = solve_double(d, Vector{1});
    CHECK(t.diverged);
    CHECK_FALSE(t.converged);
    for (const Vector& x : t.iterates)
        CHECK(std::isfinite(norm2(x)));
}

TEST_CASE("non-convergence within the iteration budget is reported")
{
    const SplittingPair ex = converse_example();
    const auto d = make_pds(ex.a, ex.p2, ex.r2, ex.s2);
    Tolerances tol;
    tol.max_iter = 5;
    const IterationTrace t = solve_double(d, Vector{1, 0}, tol);
    CHECK_FALSE(t.converged);
    CHECK_FALSE(t.diverged);
    CHECK(t.iterations_used == 5);
    check_trace_shape(t, tol);
}

TEST_CASE("fixed point and asymptotic rate on generated splittings")
{
    Rng rng(41);
    Tolerances tol;
    tol.rank_rel_cutoff = 1e-12;
    tol.max_iter = 100000;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = rng.index(1, 5), n = rng.index(1, 5);
        const std::size_t r = rng.index(1, std::min(m, n));
        DoubleInstance inst;
        try {
            inst = random_weak_regular(rng, m, n, r, rng.uniform(0.3, 0.9), rng.chance(0.5));
        } catch (const Error&) {
            continue;
        }
        const auto d = make_pds(inst.a, inst.p, inst.r, inst.s, tol);
        const double rho_w = oracle_rho(iteration_matrix(d));
        if (rho_w > 0.95)
            continue;

        Vector b(m);
        for (double& v : b)
            v = rng.normal();
        const Vector xs = oracle_lstsq_min_norm(inst.a, b);

        // x* = P^+R x* - P^+S x* + P^+b.
        Vector rhs = (d.p_pinv_r() - d.p_pinv_s()) * xs;
        const Vector pb = d.p_pinv() * b;
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] += pb[i];
        CHECK(dist(rhs, xs) <= tol.eq_abs_tol * (1.0 + norm2(xs)) * 100);

        const IterationTrace t = solve_double(d, b, tol);
        CHECK(t.converged);
        CHECK(t.distance_to_reference <= 10 * tol.solve_tol * (1.0 + norm2(xs)));
        check_trace_shape(t, tol);

        // Error ratio over the last 20 steps, away from the rounding floor.
        std::vector<double> err;
        for (const Vector& x : t.iterates)
            err.push_back(dist(x, xs));
        std::size_t end = err.size();
        while (end > 0 && err[end - 1] < 1e-9 * (1.0 + norm2(xs)))
            --end;
        if (end >= 21 && rho_w > 0.3) {
            const double rate = std::pow(err[end - 1] / err[end - 21], 1.0 / 20.0);
            CHECK(rate <= rho_w + 0.1);
        }
        ++checked;
    }
    CHECK(checked > 60);
}
