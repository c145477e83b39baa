#include "oracle.hpp"

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>

namespace psplit::testing {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m)
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e)
{
    Matrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(i, j) = e(i, j);
    return m;
}

} // namespace

Matrix oracle_pinv(const Matrix& a)
{
    if (a.max_abs() == 0.0)
        return Matrix(a.cols(), a.rows());
    const Eigen::MatrixXd e = to_eigen(a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-10 * sv(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff)
            inv(i) = 1.0 / sv(i);
    return from_eigen(svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose());
}

std::vector<std::complex<double>> oracle_eigenvalues(const Matrix& m)
{
    const Eigen::MatrixXd e = to_eigen(m);
    std::vector<std::complex<double>> out;
    Eigen::EigenSolver<Eigen::MatrixXd> es(e, false);
    if (es.info() == Eigen::Success) {
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            out.push_back(es.eigenvalues()(i));
        return out;
    }
    // The real Schur iteration gives up on some clusters of tiny eigenvalues
    // and then returns zeros; the complex solver handles them.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(e.cast<std::complex<double>>(), false);
    if (ces.info() != Eigen::Success)
        throw std::runtime_error("oracle eigensolver did not converge");
    for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i)
        out.push_back(ces.eigenvalues()(i));
    return out;
}

double oracle_rho(const Matrix& m)
{
    double r = 0.0;
    for (const auto& z : oracle_eigenvalues(m))
        r = std::max(r, std::abs(z));
    return r;
}

Vector oracle_lstsq_min_norm(const Matrix& a, std::span<const double> b)
{
    Eigen::VectorXd eb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        eb(static_cast<Eigen::Index>(i)) = b[i];
    // Rank-revealing QR misjudges rank on some generated inputs; SVD with an
    // explicit relative threshold matches oracle_pinv.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    const Eigen::VectorXd x = svd.solve(eb);
    return Vector(x.data(), x.data() + x.size());
}

} // namespace psplit::testing

namespace psplit::testing {

Vector oracle_singular_values(const Matrix& a)
{
    if (a.empty())
        return {};
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    const auto& sv = svd.singularValues();
    return Vector(sv.data(), sv.data() + sv.size());
}

double oracle_condition(const Matrix& a)
{
    const Vector sv = oracle_singular_values(a);
    if (sv.empty())
        return 1.0;
    return sv.back() > 0.0 ? sv.front() / sv.back() : std::numeric_limits<double>::infinity();
}

} // namespace psplit::testing
