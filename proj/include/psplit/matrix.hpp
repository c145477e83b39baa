#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace psplit {

using Vector = std::vector<double>;

/**
 * Dense real matrix, row-major.
 *
 * Every constructor that accepts external data rejects NaN/Inf with
 * ErrorCode::NonFinite, so a Matrix value is always finite. Arithmetic on
 * finite inputs can still overflow; callers that care check is_finite().
 */
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix ones(std::size_t rows, std::size_t cols) { return Matrix(rows, cols, 1.0); }
    static Matrix identity(std::size_t n);
    static Matrix column(std::span<const double> v);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

    /// Largest absolute entry (0 for an empty matrix).
    double max_abs() const noexcept;
    double min_entry() const noexcept;
    double frobenius_norm() const noexcept;
    bool is_finite() const noexcept;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s) noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(Matrix m, double s);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// Entrywise max(a, 0).
Matrix positive_part(const Matrix& a);
/// Entrywise product.
Matrix hadamard(const Matrix& a, const Matrix& b);

double norm2(std::span<const double> v) noexcept;
double norm_inf(std::span<const double> v) noexcept;
Vector subtract(std::span<const double> a, std::span<const double> b);

} // namespace psplit
