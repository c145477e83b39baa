#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "support/worked_examples.hpp"

#include "psplit/double_splitting.hpp"
#include "psplit/error.hpp"
#include "psplit/linalg.hpp"

#include <doctest.h>

using namespace psplit;
using namespace psplit::testing;

namespace {

ProperDoubleSplitting first(const SplittingPair& e) { return make_pds(e.a, e.p1, e.r1, e.s1); }
ProperDoubleSplitting second(const SplittingPair& e) { return make_pds(e.a, e.p2, e.r2, e.s2); }

} // namespace

TEST_CASE("trivial splitting of the identity")
{
    const Matrix i = Matrix::identity(2);
    const auto d = make_pds(i, i, Matrix(2, 2), Matrix(2, 2));
    CHECK(classify_double(d) == DoubleSplittingClass::RegularProperDouble);

    Matrix expected(4, 4);
    expected.set_block(2, 0, i);
    CHECK(iteration_matrix(d) == expected);

    const ProperSplitting s = induced_single(d);
    CHECK(s.u() == i);
    CHECK(s.v() == Matrix(2, 2));

    const auto report = check_convergence(d);
    CHECK(report.rho_w <= 1e-12);
    CHECK(report.rho_single == 0.0);
    REQUIRE(report.biconditional_holds);
    CHECK(*report.biconditional_holds);
}

TEST_CASE("first example: blocks and classes")
{
    const SplittingPair ex = converse_example();
    const auto d1 = first(ex);
    const auto d2 = second(ex);

    CHECK(max_abs_diff(d1.p_pinv_r(), 0.2 * Matrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}) <= 1e-14);
    CHECK(max_abs_diff(d1.p_pinv_s(), 0.2 * Matrix{{-2, -1, 0}, {-5, 0, 0}, {0, 0, 0}}) <= 1e-14);

    CHECK(classify_double(d1) == DoubleSplittingClass::RegularProperDouble);
    // Only weak regularity is needed here; the blocks happen to be regular too.
    const auto pred2 = class_predicates(d2);
    CHECK(pred2.weak_regular());
    CHECK(at_least_weak_regular(d2));

    const Matrix w1 = iteration_matrix(d1);
    REQUIRE(w1.rows() == 6);
    CHECK(w1.block(0, 0, 3, 3) == d1.p_pinv_r());
    CHECK(w1.block(0, 3, 3, 3) == -d1.p_pinv_s());
    CHECK(w1.block(3, 0, 3, 3) == Matrix::identity(3));
    CHECK(w1.block(3, 3, 3, 3) == Matrix(3, 3));

    CHECK(max_abs_diff(induced_single(d1).v(), Matrix{{2, 1, 0}, {1, 0, 0}}) <= 1e-15);
}

TEST_CASE("first example: convergence reports")
{
    const SplittingPair ex = converse_example();
    const auto r1 = check_convergence(first(ex));
    const auto r2 = check_convergence(second(ex));
    CHECK(r1.rho_w == doctest::Approx(0.9079).epsilon(5e-4));
    CHECK(r2.rho_w == doctest::Approx(0.9158).epsilon(5e-4));
    CHECK(r1.rho_w == doctest::Approx(oracle_rho(iteration_matrix(first(ex)))).epsilon(1e-10));
    CHECK(r1.a_pinv_nonneg);
    REQUIRE(r1.convergence_predicted);
    CHECK(*r1.convergence_predicted);
    CHECK(*r1.convergence_observed);
    CHECK(*r2.convergence_observed);
}

TEST_CASE("second example: blocks and radii")
{
    const SplittingPair ex = duplicated_column_example();
    const auto d2 = second(ex);
    CHECK(max_abs_diff(d2.p_pinv_r(), 0.125 * Matrix{{2, 0, 2}, {0, 0, 0}, {2, 0, 2}}) <= 1e-14);
    CHECK(max_abs_diff(d2.p_pinv_s(), 0.125 * Matrix{{-1, 0, -1}, {0, -6, 0}, {-1, 0, -1}})
          <= 1e-14);
    CHECK(max_abs_diff(induced_single(first(ex)).v(), Matrix{{2, 0, 2}, {0, 2, 0}}) <= 1e-15);

    CHECK(check_convergence(first(ex)).rho_w == doctest::Approx(0.7675918792439982).epsilon(1e-9));
    CHECK(check_convergence(d2).rho_w == doctest::Approx(0.8660254037844386).epsilon(1e-9));
    CHECK(oracle_rho(iteration_matrix(d2)) == doctest::Approx(0.8660254037844386).epsilon(1e-9));
}

TEST_CASE("a pseudoinverse with a negative entry gives ProperDoubleOnly")
{
    const Matrix p{{1, 2}, {0, 1}};
    const Matrix r = 0.5 * Matrix::identity(2);
    const auto d = make_pds(p - r, p, r, Matrix(2, 2));
    CHECK_FALSE(class_predicates(d).p_pinv_nonneg);
    CHECK(classify_double(d) == DoubleSplittingClass::ProperDoubleOnly);
    const auto report = check_convergence(d);
    CHECK_FALSE(report.weak_regular);
    CHECK_FALSE(report.biconditional_holds);
    CHECK_FALSE(report.convergence_predicted);
}

TEST_CASE("construction errors")
{
    const SplittingPair ex = converse_example();
    SUBCASE("decomposition mismatch")
    {
        try {
            (void)make_pds(ex.a, ex.p1, ex.r1, Matrix(2, 3));
            FAIL("expected DecompositionMismatch");
        } catch (const DecompositionMismatchError& e) {
            CHECK(e.code() == ErrorCode::DecompositionMismatch);
            CHECK(e.residual() == doctest::Approx(1.0));
        }
    }
    SUBCASE("shape mismatch")
    {
        try {
            (void)make_pds(ex.a, ex.p1, ex.r1, Matrix(3, 2));
            FAIL("expected ShapeMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ShapeMismatch);
        }
    }
    SUBCASE("not proper")
    {
        // P = A + [[0,0,1],[0,0,0]] picks up a third column.
        const Matrix extra{{0, 0, 1}, {0, 0, 0}};
        CHECK_THROWS_AS(make_pds(ex.a, ex.p1 + extra, ex.r1 + extra, ex.s1), NotProperError);
    }
}

TEST_CASE("square variant")
{
    const Matrix a{{2, -1}, {-1, 2}};
    const Matrix p = 2.0 * Matrix::identity(2);
    const Matrix r{{0, 1}, {1, 0}};
    const auto d = make_pds_square(a, p, r, Matrix(2, 2));
    CHECK(max_abs_diff(d.p_pinv(), 0.5 * Matrix::identity(2)) <= 1e-15);
    CHECK(max_abs_diff(d.a_pinv(), (1.0 / 3) * Matrix{{2, 1}, {1, 2}}) <= 1e-14);
    CHECK(check_convergence(d).rho_single == doctest::Approx(0.5));

    try {
        (void)make_pds_square(Matrix(2, 3), Matrix(2, 3), Matrix(2, 3), Matrix(2, 3));
        FAIL("expected NotSquare");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSquare);
    }
    try {
        const Matrix singular{{1, 1}, {1, 1}};
        (void)make_pds_square(singular, singular, Matrix(2, 2), Matrix(2, 2));
        FAIL("expected NotInvertible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInvertible);
    }
}

TEST_CASE("assembly identity and biconditional on generated weak regular splittings")
{
    Rng rng(31);
    Tolerances tol;
    tol.rank_rel_cutoff = 1e-12;
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = rng.index(1, 5), n = rng.index(1, 5);
        const std::size_t r = rng.index(1, std::min(m, n));
        const double target = rng.chance(0.5) ? rng.uniform(0.05, 0.9) : rng.uniform(1.1, 3.0);
        DoubleInstance inst;
        try {
            inst = random_weak_regular(rng, m, n, r, target, rng.chance(0.5));
        } catch (const Error&) {
            continue;
        }
        const auto d = make_pds(inst.a, inst.p, inst.r, inst.s, tol);
        CHECK(at_least_weak_regular(d, tol));

        const Matrix w = iteration_matrix(d);
        CHECK(w.block(n, 0, n, n) == Matrix::identity(n));
        CHECK(w.block(n, n, n, n) == Matrix(n, n));

        const auto report = check_convergence(d, tol);
        const double rho_w = oracle_rho(w);
        const double rho_single = oracle_rho(d.p_pinv() * (inst.r - inst.s));
        CHECK(report.rho_w == doctest::Approx(rho_w).epsilon(1e-8).scale(1.0));
        CHECK(report.rho_single == doctest::Approx(rho_single).epsilon(1e-8).scale(1.0));
        CHECK((rho_w < 1.0) == (rho_single < 1.0));
        REQUIRE(report.biconditional_holds);
        CHECK(*report.biconditional_holds);
        ++checked;
    }
    CHECK(checked > 150);
}

TEST_CASE("regular implies the weak regular predicates")
{
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(1, 4);
        const Matrix p = Matrix::identity(n) * rng.uniform(1.0, 4.0);
        const Matrix r = random_nonneg(rng, n, n, 0.5);
        const Matrix s = -random_nonneg(rng, n, n, 0.5);
        const Matrix a = p - r + s;
        if (rank(a) < n)
            continue;
        const auto d = make_pds(a, p, r, s);
        const auto pred = class_predicates(d);
        if (pred.regular())
            CHECK(pred.weak_regular());
    }
}
