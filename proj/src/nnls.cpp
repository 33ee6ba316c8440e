#include "kolmo/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kolmo {

namespace {

std::vector<double> residual_of(const linalg::Matrix& a, std::span<const double> b,
                                const std::vector<std::size_t>& passive,
                                const std::vector<double>& xp) {
    std::vector<double> r(b.begin(), b.end());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < passive.size(); ++k) r[i] -= a(i, passive[k]) * xp[k];
    return r;
}

std::optional<std::vector<double>> passive_solve(const linalg::Matrix& a,
                                                 std::span<const double> b,
                                                 const std::vector<std::size_t>& passive) {
    linalg::Matrix sub(a.rows(), passive.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < passive.size(); ++k) sub(i, k) = a(i, passive[k]);
    return linalg::least_squares(std::move(sub), std::vector<double>(b.begin(), b.end()));
}

}  // namespace

NnlsResult nnls(const linalg::Matrix& a, std::span<const double> b, int max_iterations) {
    const std::size_t m = a.rows(), n = a.cols();
    if (max_iterations <= 0) max_iterations = static_cast<int>(30 * m + 50);

    double bnorm = 0.0;
    for (double v : b) bnorm = std::max(bnorm, std::abs(v));
    // Dual threshold relative to the data scale; columns are expected to be
    // normalized by the caller.
    const double dual_tol = 1e-13 * std::max(bnorm, 1e-300);

    NnlsResult out;
    out.x.assign(n, 0.0);
    std::vector<char> in_passive(n, 0);
    std::vector<std::size_t> passive;
    std::vector<double> xp;  // passive-set coefficients, aligned with `passive`
    std::vector<double> r(b.begin(), b.end());

    int iter = 0;
    while (iter < max_iterations) {
        // Dual vector w = a^T r over the active (zero) set.
        double wmax = 0.0;
        std::size_t jmax = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (in_passive[j]) continue;
            double wj = 0.0;
            for (std::size_t i = 0; i < m; ++i) wj += a(i, j) * r[i];
            if (wj > wmax) {
                wmax = wj;
                jmax = j;
            }
        }
        if (jmax == n || wmax <= dual_tol || passive.size() >= m) {
            out.converged = true;
            break;
        }

        passive.push_back(jmax);
        in_passive[jmax] = 1;

        // Inner loop: restore feasibility of the passive-set solution.
        while (true) {
            ++iter;
            auto z = passive_solve(a, b, passive);
            if (!z) {
                // Dependent column; drop the newest entry and zero its dual.
                in_passive[passive.back()] = 0;
                passive.pop_back();
                break;
            }
            bool all_positive = true;
            double alpha = 1.0;
            std::size_t drop = passive.size();
            for (std::size_t k = 0; k < passive.size(); ++k) {
                if ((*z)[k] <= 0.0) {
                    double xk = (k < xp.size()) ? xp[k] : 0.0;
                    double t = xk / (xk - (*z)[k]);
                    if (t < alpha) {
                        alpha = t;
                        drop = k;
                    }
                    all_positive = false;
                }
            }
            if (all_positive) {
                xp = std::move(*z);
                break;
            }
            // Move toward z until the first coefficient hits zero, remove it.
            std::vector<double> xnew(passive.size(), 0.0);
            for (std::size_t k = 0; k < passive.size(); ++k) {
                double xk = (k < xp.size()) ? xp[k] : 0.0;
                xnew[k] = xk + alpha * ((*z)[k] - xk);
            }
            if (drop < passive.size()) {
                in_passive[passive[drop]] = 0;
                passive.erase(passive.begin() + static_cast<std::ptrdiff_t>(drop));
                xnew.erase(xnew.begin() + static_cast<std::ptrdiff_t>(drop));
            }
            xp = std::move(xnew);
            if (iter >= max_iterations) break;
        }
        r = residual_of(a, b, passive, xp);
    }

    for (std::size_t k = 0; k < passive.size(); ++k) out.x[passive[k]] = std::max(xp[k], 0.0);
    r = residual_of(a, b, passive, xp);
    for (double v : r) {
        out.residual_inf = std::max(out.residual_inf, std::abs(v));
        out.residual_l2 += v * v;
    }
    out.residual_l2 = std::sqrt(out.residual_l2);
    out.iterations = iter;
    if (iter < max_iterations) out.converged = true;
    return out;
}

}  // namespace kolmo
