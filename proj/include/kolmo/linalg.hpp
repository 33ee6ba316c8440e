#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace kolmo::linalg {

/// Dense row-major matrix. Sizes here are tiny (rows <= 8 for the moment
/// systems, a few thousand columns for the grid), so no blocking is needed.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const double* row(std::size_t i) const { return a_.data() + i * cols_; }
    double* row(std::size_t i) { return a_.data() + i * cols_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// x^n for integer n >= 0 by repeated squaring, with 0^0 = 1.
double powi(double x, long long n);

/// Determinant by LU with partial pivoting; returns 0 on an exactly
/// singular pivot. The matrix is taken by value and factored in place.
double lu_determinant(Matrix m);

/// Solves the square system a x = b. Empty result on a (numerically)
/// singular matrix.
std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b);

/// Least-squares solution of a x ~= b for rows >= cols via Householder QR.
/// Empty result when a column of R collapses (rank deficiency).
std::optional<std::vector<double>> least_squares(Matrix a, std::vector<double> b);

/// A vector eta != 0 with m * eta = 0, for rows < cols (always exists).
/// Computed from a column-pivoted QR; used by the Caratheodory reduction.
std::vector<double> null_vector(const Matrix& m);

}  // namespace kolmo::linalg
