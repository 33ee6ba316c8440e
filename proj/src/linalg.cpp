#include "kolmo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kolmo::linalg {

double powi(double x, long long n) {
    double result = 1.0;
    while (n > 0) {
        if (n & 1) result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

double lu_determinant(Matrix m) {
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > best) {
                best = std::abs(m(i, k));
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m(i, k) / m(k, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) return std::nullopt;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
        b[i] = s / a(i, i);
        if (!std::isfinite(b[i])) return std::nullopt;
    }
    return b;
}

namespace {

// Householder QR in place; returns false if a diagonal of R vanishes.
bool qr_inplace(Matrix& a, std::vector<double>& b) {
    const std::size_t m = a.rows(), n = a.cols();
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0 || !std::isfinite(norm)) return false;
        if (a(k, k) > 0.0) norm = -norm;
        for (std::size_t i = k; i < m; ++i) a(i, k) /= norm;
        a(k, k) -= 1.0;
        for (std::size_t j = k + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += a(i, k) * a(i, j);
            s /= a(k, k);
            for (std::size_t i = k; i < m; ++i) a(i, j) += s * a(i, k);
        }
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += a(i, k) * b[i];
        s /= a(k, k);
        for (std::size_t i = k; i < m; ++i) b[i] += s * a(i, k);
        a(k, k) = norm;  // diagonal of R
    }
    return true;
}

}  // namespace

std::optional<std::vector<double>> least_squares(Matrix a, std::vector<double> b) {
    const std::size_t n = a.cols();
    if (!qr_inplace(a, b)) return std::nullopt;
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
        if (!std::isfinite(x[i])) return std::nullopt;
    }
    return x;
}

std::vector<double> null_vector(const Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Matrix a = m;
    std::vector<std::size_t> perm(cols);
    for (std::size_t j = 0; j < cols; ++j) perm[j] = j;

    // Column-pivoted elimination; stop at the first dependent column.
    std::size_t rank = 0;
    for (; rank < rows && rank < cols; ++rank) {
        std::size_t pc = rank;
        double best = 0.0;
        for (std::size_t j = rank; j < cols; ++j) {
            double colmax = 0.0;
            for (std::size_t i = rank; i < rows; ++i) colmax = std::max(colmax, std::abs(a(i, j)));
            if (colmax > best) {
                best = colmax;
                pc = j;
            }
        }
        if (best == 0.0) break;
        if (pc != rank) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, rank), a(i, pc));
            std::swap(perm[rank], perm[pc]);
        }
        std::size_t pr = rank;
        for (std::size_t i = rank + 1; i < rows; ++i)
            if (std::abs(a(i, rank)) > std::abs(a(pr, rank))) pr = i;
        if (pr != rank)
            for (std::size_t j = rank; j < cols; ++j) std::swap(a(rank, j), a(pr, j));
        for (std::size_t i = rank + 1; i < rows; ++i) {
            double f = a(i, rank) / a(rank, rank);
            for (std::size_t j = rank; j < cols; ++j) a(i, j) -= f * a(rank, j);
        }
    }

    // Express column `rank` through the pivot columns; back substitution on
    // the triangular leading block.
    std::vector<double> eta(cols, 0.0);
    std::vector<double> z(rank, 0.0);
    for (std::size_t i = rank; i-- > 0;) {
        double s = a(i, rank);
        for (std::size_t j = i + 1; j < rank; ++j) s -= a(i, j) * z[j];
        z[i] = s / a(i, i);
    }
    for (std::size_t i = 0; i < rank; ++i) eta[perm[i]] = z[i];
    eta[perm[rank]] = -1.0;
    return eta;
}

}  // namespace kolmo::linalg
