#include "psplit/linalg.hpp"

#include "psplit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace psplit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const Matrix& m, const char* op)
{
    if (!m.is_square())
        throw Error(ErrorCode::NotSquare, std::string(op) + ": matrix is not square");
}

void require_finite(const Matrix& m)
{
    if (!m.is_finite())
        throw Error(ErrorCode::NonFinite, "matrix entry is NaN or infinite");
}

// One-sided Jacobi on the columns of g (m >= n). On return the columns of g
// are mutually orthogonal and v holds the accumulated rotations.
void jacobi_orthogonalize(Matrix& g, Matrix& v, std::size_t max_sweeps)
{
    const std::size_t m = g.rows();
    const std::size_t n = g.cols();
    // Columns shorter than this are rounding noise. Rotating them against each
    // other never settles, and they sit far below any rank cutoff.
    const double negligible = kEps * g.frobenius_norm();
    const double negligible_sq = negligible * negligible;
    const double orth_tol = kEps * static_cast<double>(std::max<std::size_t>(m, 1));
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += g(i, p) * g(i, p);
                    beta += g(i, q) * g(i, q);
                    gamma += g(i, p) * g(i, q);
                }
                if (alpha <= negligible_sq || beta <= negligible_sq)
                    continue;
                // Columns orthogonal to m * eps relative accuracy count as
                // converged; a tighter test can stall on rounding.
                if (std::abs(gamma) <= orth_tol * std::sqrt(alpha) * std::sqrt(beta))
                    continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double gp = g(i, p);
                    const double gq = g(i, q);
                    g(i, p) = c * gp - s * gq;
                    g(i, q) = s * gp + c * gq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p);
                    const double vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated)
            return;
    }
    throw Error(ErrorCode::DecompositionFailure, "Jacobi SVD did not converge");
}

Svd svd_tall(const Matrix& a, std::size_t max_sweeps)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    // Work on a / max|a| so squared column norms neither overflow nor underflow.
    const double scale = a.max_abs();
    Matrix g = a;
    if (scale > 0.0)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                g(i, j) /= scale;
    Matrix v = Matrix::identity(n);
    jacobi_orthogonalize(g, v, max_sweeps);

    Vector norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            s += g(i, j) * g(i, j);
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    Svd out{Matrix(m, n), Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        const double s = norms[j];
        out.sigma[k] = s * scale;
        for (std::size_t i = 0; i < n; ++i)
            out.v(i, k) = v(i, j);
        if (s > 0.0)
            for (std::size_t i = 0; i < m; ++i)
                out.u(i, k) = g(i, j) / s;
    }
    return out;
}

/// LU factorization with partial pivoting, row-major in place.
struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;

    Lu(const Matrix& a, double pivot_floor) : lu(a), perm(a.rows())
    {
        const std::size_t n = a.rows();
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(lu(i, k)) > std::abs(lu(piv, k)))
                    piv = i;
            if (std::abs(lu(piv, k)) <= pivot_floor) {
                singular = true;
                return;
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(lu(k, j), lu(piv, j));
                std::swap(perm[k], perm[piv]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const double f = lu(i, k) / lu(k, k);
                lu(i, k) = f;
                if (f == 0.0)
                    continue;
                for (std::size_t j = k + 1; j < n; ++j)
                    lu(i, j) -= f * lu(k, j);
            }
        }
    }

    Vector solve(std::span<const double> b) const
    {
        const std::size_t n = lu.rows();
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = b[perm[i]];
            for (std::size_t j = 0; j < i; ++j)
                s -= lu(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = x[i];
            for (std::size_t j = i + 1; j < n; ++j)
                s -= lu(i, j) * x[j];
            x[i] = s / lu(i, i);
        }
        return x;
    }
};

double pivot_floor(const Matrix& a, const Tolerances& tol)
{
    return tol.rank_cutoff_for(a.rows(), a.cols()) * a.max_abs();
}

// Similarity scaling by powers of two so row and column norms are comparable.
void balance(Matrix& a)
{
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    const std::size_t n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0)
                continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) *= ginv;
                for (std::size_t j = 0; j < n; ++j)
                    a(j, i) *= f;
            }
        }
    }
}

void to_hessenberg(Matrix& h)
{
    const std::size_t n = h.rows();
    if (n < 3)
        return;
    Vector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i)
            xnorm = std::hypot(xnorm, h(i, k));
        if (xnorm == 0.0)
            continue;
        const double alpha = -std::copysign(xnorm, h(k + 1, k));
        for (std::size_t i = k + 1; i < n; ++i)
            v[i] = h(i, k);
        v[k + 1] -= alpha;
        double vnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i)
            vnorm = std::hypot(vnorm, v[i]);
        if (vnorm == 0.0)
            continue;
        for (std::size_t i = k + 1; i < n; ++i)
            v[i] /= vnorm;
        // H <- (I - 2vv^T) H
        for (std::size_t j = k; j < n; ++j) {
            double d = 0.0;
            for (std::size_t i = k + 1; i < n; ++i)
                d += v[i] * h(i, j);
            for (std::size_t i = k + 1; i < n; ++i)
                h(i, j) -= 2.0 * d * v[i];
        }
        // H <- H (I - 2vv^T)
        for (std::size_t i = 0; i < n; ++i) {
            double d = 0.0;
            for (std::size_t j = k + 1; j < n; ++j)
                d += h(i, j) * v[j];
            for (std::size_t j = k + 1; j < n; ++j)
                h(i, j) -= 2.0 * d * v[j];
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i)
            h(i, k) = 0.0;
    }
}

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr
// structure, 1-based indices internally). Destroys h.
std::vector<std::complex<double>> hessenberg_qr(Matrix& h, std::size_t max_total_iter)
{
    const int n = static_cast<int>(h.rows());
    auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };
    std::vector<double> wr(n + 1), wi(n + 1);

    double anorm = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i - 1, 1); j <= n; ++j)
            anorm += std::abs(a(i, j));

    // Same budget as LAPACK's dlahqr; clusters of nearly defective
    // eigenvalues can need well over the classic 30 sweeps.
    const int per_eigenvalue_limit = 30 * std::max(10, n);
    std::size_t total_iter = 0;
    int nn = n;
    double t = 0.0;
    while (nn >= 1) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 2; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0)
                    s = anorm;
                // The second test is normwise: with a near-zero diagonal the
                // relative test alone stalls on defective zero eigenvalues.
                if (std::abs(a(l, l - 1)) + s == s ||
                    std::abs(a(l, l - 1)) <= std::numeric_limits<double>::epsilon() * anorm) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + std::copysign(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0)
                            wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn - 1] = -z;
                        wi[nn] = z;
                    }
                    nn -= 2;
                } else {
                    if (its == per_eigenvalue_limit || total_iter >= max_total_iter)
                        throw Error(ErrorCode::DecompositionFailure,
                                    "Hessenberg QR did not converge");
                    if (its > 0 && its % 10 == 0) {
                        // Exceptional shift.
                        t += x;
                        for (int i = 1; i <= nn; ++i)
                            a(i, i) -= x;
                        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    ++total_iter;
                    int m = nn - 2;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l)
                            break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v =
                            std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                           std::abs(a(m + 1, m + 1)));
                        if (u + v == v)
                            break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2)
                            a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1)
                                r = a(k + 2, k - 1);
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0)
                            continue;
                        if (k == m) {
                            if (l != m)
                                a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = std::min(nn, k + 3);
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k != nn - 1) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (nn >= 1 && l < nn - 1);
    }

    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i)
        out.emplace_back(wr[i], wi[i]);
    return out;
}

// Nonnegative eigenvector for rho of a nonnegative matrix.
Vector perron_vector(const Matrix& m, double rho, const Tolerances& tol)
{
    const std::size_t n = m.rows();
    const double scale = std::max(rho, m.max_abs());
    Vector best(n, 1.0);
    if (scale == 0.0)
        return best;
    double best_residual = std::numeric_limits<double>::infinity();
    // A Jordan block at rho stalls the iteration near relative error delta,
    // so restart with smaller shifts.
    for (double rel : {1e-7, 1e-10, 1e-13}) {
        Matrix shifted = -m;
        for (std::size_t i = 0; i < n; ++i)
            shifted(i, i) += rho + rel * scale;
        const Lu lu(shifted, 0.0);
        if (lu.singular)
            continue;
        Vector v = best;
        constexpr int max_steps = 50;
        for (int step = 0; step < max_steps; ++step) {
            v = lu.solve(v);
            for (double& x : v)
                x = std::max(x, 0.0);
            const double vmax = norm_inf(v);
            if (vmax == 0.0 || !std::isfinite(vmax))
                break;
            for (double& x : v)
                x /= vmax;
            Vector mv = m * v;
            for (std::size_t i = 0; i < n; ++i)
                mv[i] -= rho * v[i];
            const double residual = norm2(mv) / norm2(v);
            if (residual < best_residual) {
                best_residual = residual;
                best = v;
            }
            if (residual <= tol.spectral_tol)
                return best;
        }
    }
    return best;
}

} // namespace

double PenroseResiduals::max() const
{
    return std::max({axa, xax, ax_symmetric, xa_symmetric});
}

Svd svd(const Matrix& a, const Tolerances& tol)
{
    require_finite(a);
    if (a.rows() >= a.cols())
        return svd_tall(a, tol.max_iter);
    Svd t = svd_tall(a.transpose(), tol.max_iter);
    return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

std::size_t rank(const Matrix& a, const Tolerances& tol)
{
    const Svd d = svd(a, tol);
    if (d.sigma.empty() || d.sigma.front() == 0.0)
        return 0;
    const double cutoff = tol.rank_cutoff_for(a.rows(), a.cols()) * d.sigma.front();
    return static_cast<std::size_t>(
        std::count_if(d.sigma.begin(), d.sigma.end(), [&](double s) { return s > cutoff; }));
}

Matrix pinv(const Matrix& a, const Tolerances& tol)
{
    const Svd d = svd(a, tol);
    Matrix x(a.cols(), a.rows());
    if (d.sigma.empty() || d.sigma.front() == 0.0)
        return x;
    const double cutoff = tol.rank_cutoff_for(a.rows(), a.cols()) * d.sigma.front();
    for (std::size_t k = 0; k < d.sigma.size(); ++k) {
        if (d.sigma[k] <= cutoff)
            break;
        const double inv = 1.0 / d.sigma[k];
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double vik = d.v(i, k) * inv;
            if (vik == 0.0)
                continue;
            for (std::size_t j = 0; j < a.rows(); ++j)
                x(i, j) += vik * d.u(j, k);
        }
    }
    if (!x.is_finite())
        throw Error(ErrorCode::NonFinite, "pseudoinverse overflows double range");
    return x;
}

PenroseResiduals penrose_residuals(const Matrix& a, const Matrix& x)
{
    const Matrix ax = a * x;
    const Matrix xa = x * a;
    PenroseResiduals r;
    r.axa = max_abs_diff(ax * a, a);
    r.xax = max_abs_diff(xa * x, x);
    r.ax_symmetric = max_abs_diff(ax.transpose(), ax);
    r.xa_symmetric = max_abs_diff(xa.transpose(), xa);
    return r;
}

Matrix inverse(const Matrix& a, const Tolerances& tol)
{
    require_square(a, "inverse");
    require_finite(a);
    const std::size_t n = a.rows();
    const Lu lu(a, pivot_floor(a, tol));
    if (lu.singular || a.max_abs() == 0.0)
        throw Error(ErrorCode::NotInvertible, "matrix is singular to working precision");
    Matrix inv(n, n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        const Vector col = lu.solve(e);
        for (std::size_t i = 0; i < n; ++i)
            inv(i, j) = col[i];
    }
    return inv;
}

Vector solve_linear(const Matrix& a, std::span<const double> b, const Tolerances& tol)
{
    require_square(a, "solve_linear");
    if (b.size() != a.rows())
        throw Error(ErrorCode::ShapeMismatch, "solve_linear: right-hand side length");
    const Lu lu(a, pivot_floor(a, tol));
    if (lu.singular || a.max_abs() == 0.0)
        throw Error(ErrorCode::NotInvertible, "matrix is singular to working precision");
    return lu.solve(b);
}

Spectrum eigenvalues(const Matrix& m, const Tolerances& tol)
{
    require_square(m, "eigenvalues");
    require_finite(m);
    Spectrum out;
    if (m.rows() == 0)
        return out;

    Matrix h = m;
    balance(h);
    to_hessenberg(h);
    out.eigenvalues = hessenberg_qr(h, tol.max_iter);
    for (const auto& z : out.eigenvalues)
        out.spectral_radius = std::max(out.spectral_radius, std::abs(z));

    if (is_nonneg(m, tol))
        out.dominant_vector = perron_vector(m, out.spectral_radius, tol);
    return out;
}

double spectral_radius(const Matrix& m, const Tolerances& tol)
{
    require_square(m, "spectral_radius");
    require_finite(m);
    if (m.rows() == 0)
        return 0.0;
    Matrix h = m;
    balance(h);
    to_hessenberg(h);
    double rho = 0.0;
    for (const auto& z : hessenberg_qr(h, tol.max_iter))
        rho = std::max(rho, std::abs(z));
    return rho;
}

bool is_nonneg(const Matrix& m, const Tolerances& tol)
{
    return m.empty() || m.min_entry() >= -tol.nonneg_slack;
}

bool geq(const Matrix& a, const Matrix& b, const Tolerances& tol)
{
    return is_nonneg(a - b, tol);
}

bool has_zero_row(const Matrix& m, const Tolerances& tol)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        if (std::all_of(r.begin(), r.end(),
                        [&](double x) { return std::abs(x) <= tol.nonneg_slack; }))
            return true;
    }
    return false;
}

Matrix range_projector(const Matrix& a, const Tolerances& tol) { return a * pinv(a, tol); }

Matrix nullspace_projector(const Matrix& a, const Tolerances& tol)
{
    return Matrix::identity(a.cols()) - pinv(a, tol) * a;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

} // namespace psplit
