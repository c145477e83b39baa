#include "psplit/solver.hpp"

#include "psplit/error.hpp"
#include "psplit/linalg.hpp"

#include <cmath>

namespace psplit {

namespace {

void require_length(std::span<const double> v, std::size_t n, const char* what)
{
    if (v.size() != n)
        throw Error(ErrorCode::ShapeMismatch,
                    std::string(what) + " has length " + std::to_string(v.size()) +
                        ", expected " + std::to_string(n));
}

// Drives a stationary recursion. `step(prev, cur)` returns the next iterate.
template <typename Step>
IterationTrace run(Step&& step, Vector prev, Vector cur, Vector reference, const Tolerances& tol)
{
    IterationTrace trace;
    const double ref_norm = norm2(reference);
    const double stop_distance = tol.solve_tol * (1.0 + ref_norm);
    const double converged_distance = 10.0 * tol.solve_tol * (1.0 + ref_norm);

    double step_norm = 0.0;
    double distance = norm2(subtract(cur, reference));
    while (trace.iterations_used < tol.max_iter) {
        Vector next = step(prev, cur);
        step_norm = norm2(subtract(next, cur));
        distance = norm2(subtract(next, reference));
        ++trace.iterations_used;
        trace.residual_history.push_back(step_norm);
        trace.iterates.push_back(next);
        prev = std::move(cur);
        cur = std::move(next);

        const double size = norm2(cur);
        if (!std::isfinite(size) || size > kDivergenceGuard) {
            trace.diverged = true;
            break;
        }
        if (step_norm <= tol.solve_tol && distance <= stop_distance)
            break;
    }
    trace.converged = !trace.diverged && trace.iterations_used > 0 &&
                      step_norm <= tol.solve_tol && distance <= converged_distance;
    trace.limit = std::move(cur);
    trace.distance_to_reference = distance;
    trace.reference_solution = std::move(reference);
    return trace;
}

Vector zeros(std::size_t n) { return Vector(n, 0.0); }

} // namespace

Vector min_norm_lsq(const Matrix& a, std::span<const double> b, const Tolerances& tol)
{
    require_length(b, a.rows(), "b");
    return pinv(a, tol) * b;
}

IterationTrace solve_double(const ProperDoubleSplitting& d, std::span<const double> b,
                            std::span<const double> x0, std::span<const double> x1,
                            const Tolerances& tol)
{
    tol.validate();
    const std::size_t n = d.n();
    require_length(b, d.a().rows(), "b");
    require_length(x0, n, "x0");
    require_length(x1, n, "x1");

    const Vector c = d.p_pinv() * b;
    const Matrix& pr = d.p_pinv_r();
    const Matrix& ps = d.p_pinv_s();
    auto step = [&](const Vector& prev, const Vector& cur) {
        Vector next(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += pr(i, j) * cur[j] - ps(i, j) * prev[j];
            next[i] = s + c[i];
        }
        return next;
    };
    return run(step, Vector(x0.begin(), x0.end()), Vector(x1.begin(), x1.end()),
               d.a_pinv() * b, tol);
}

IterationTrace solve_double(const ProperDoubleSplitting& d, std::span<const double> b,
                            const Tolerances& tol)
{
    const Vector z = zeros(d.n());
    return solve_double(d, b, z, z, tol);
}

IterationTrace solve_single(const ProperSplitting& s, std::span<const double> b,
                            std::span<const double> x0, const Tolerances& tol)
{
    tol.validate();
    const std::size_t n = s.a().cols();
    require_length(b, s.a().rows(), "b");
    require_length(x0, n, "x0");

    const Matrix h = s.u_pinv() * s.v();
    const Vector c = s.u_pinv() * b;
    auto step = [&](const Vector&, const Vector& cur) {
        Vector next = h * cur;
        for (std::size_t i = 0; i < n; ++i)
            next[i] += c[i];
        return next;
    };
    IterationTrace trace =
        run(step, Vector(x0.begin(), x0.end()), Vector(x0.begin(), x0.end()), s.a_pinv() * b, tol);
    trace.x0_in_null_v = norm_inf(s.v() * x0) <= tol.eq_abs_tol;
    return trace;
}

IterationTrace solve_single(const ProperSplitting& s, std::span<const double> b,
                            const Tolerances& tol)
{
    const Vector z = zeros(s.a().cols());
    return solve_single(s, b, z, tol);
}

} // namespace psplit
