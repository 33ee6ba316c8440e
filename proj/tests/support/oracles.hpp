// Independent test oracles: closed-form boundary classification for the
// (1, t, t^2) system, a small dense simplex for grid LPs, and seeded random
// instance generators. Everything here is deliberately separate from the
// solver paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "kolmo/linalg.hpp"
#include "kolmo/moment_cone.hpp"
#include "kolmo/rng.hpp"
#include "kolmo/types.hpp"

namespace oracles {

// ---- closed form for exponents (0,1,2): Hankel / Cauchy-Schwarz ----------
//
// The classifier's band is a best-fit residual relative to max |c_i| in the
// dilation-balanced coordinates; the discriminant |c1^2 - c0 c2| relates to
// that residual through the equioscillation constant of the one-atom fit
// (about 4). The closed form uses the same scale so the two tests measure
// the same boundary shell.

inline double discriminant_012(const std::vector<double>& c) {
    double lhs = c[1] * c[1], rhs = c[0] * c[2];
    return std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300});
}

inline kolmo::Membership closed_form_012(const std::vector<double>& c, double band) {
    using kolmo::Membership;
    double c0 = c[0], c1 = c[1], c2 = c[2];
    if (c0 == 0.0 && c1 == 0.0 && c2 == 0.0) return Membership::Boundary;  // zero vector
    if (c0 > 0.0 && c1 <= band * c0 && c2 <= band * c0) {
        // nonnegative multiple of (1,0,0)
        return Membership::Boundary;
    }
    if (c0 <= 0.0 || c2 <= 0.0) return Membership::Outside;
    if (discriminant_012(c) <= 4.0 * band) return Membership::Boundary;
    return c1 * c1 < c0 * c2 ? Membership::Interior : Membership::Outside;
}

// Exemption shell for classifier/closed-form comparisons: anything this
// close to the parabola is within the numeric ambiguity of either test.
inline bool within_boundary_shell_012(const std::vector<double>& c, double band) {
    return discriminant_012(c) <= 10.0 * band;
}

// ---- dense two-phase simplex: max c'x s.t. Ax = b, x >= 0 -----------------
// Rows here are the moment constraints (two of them for the applications
// oracle), columns the grid atoms.

struct LpResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<double> x;
};

inline LpResult simplex_max(const kolmo::linalg::Matrix& a, std::vector<double> b,
                            std::vector<double> obj) {
    const std::size_t m = a.rows(), n = a.cols();
    // tableau with artificial basis: columns [x | artificials | rhs];
    // rows are scaled to unit size so the phase-1 feasibility threshold is
    // meaningful for moments spanning many decades
    std::size_t cols = n + m + 1;
    kolmo::linalg::Matrix t(m + 1, cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double scale = std::abs(b[i]);
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
        scale = std::max(scale, 1e-300);
        double sign = (b[i] < 0.0) ? -1.0 / scale : 1.0 / scale;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
        t(i, n + i) = 1.0;
        t(i, cols - 1) = sign * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    auto pivot = [&](std::size_t pr, std::size_t pc) {
        double pv = t(pr, pc);
        for (std::size_t j = 0; j < cols; ++j) t(pr, j) /= pv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == pr) continue;
            double f = t(i, pc);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t(i, j) -= f * t(pr, j);
        }
        basis[pr] = pc;
    };

    auto run = [&](std::size_t limit_col) {
        for (int iter = 0; iter < 20000; ++iter) {
            // Bland's rule on the reduced costs in row m
            std::size_t pc = limit_col;
            for (std::size_t j = 0; j < limit_col; ++j) {
                if (t(m, j) < -1e-11) {
                    pc = j;
                    break;
                }
            }
            if (pc == limit_col) return true;
            std::size_t pr = m;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t(i, pc) > 1e-12) {
                    double ratio = t(i, cols - 1) / t(i, pc);
                    if (ratio < best - 1e-15 ||
                        (ratio < best + 1e-15 && (pr == m || basis[i] < basis[pr]))) {
                        best = ratio;
                        pr = i;
                    }
                }
            }
            if (pr == m) return false;  // unbounded
            pivot(pr, pc);
        }
        return false;
    };

    // phase 1: minimize the sum of artificials
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += t(i, j);
        t(m, j) = (j >= n && j < n + m) ? 0.0 : -s;
    }
    run(n);
    double infeas = -t(m, cols - 1);
    LpResult out;
    if (std::abs(infeas) > 1e-8) return out;  // infeasible
    // drive any artificial out of the basis if possible
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) {
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(t(i, j)) > 1e-9) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // phase 2: maximize obj (minimize -obj)
    for (std::size_t j = 0; j < cols; ++j) t(m, j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t(m, j) = -obj[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n && t(m, basis[i]) != 0.0) {
            double f = t(m, basis[i]);
            for (std::size_t j = 0; j < cols; ++j) t(m, j) -= f * t(i, j);
        }
    }
    if (!run(n)) return out;

    out.feasible = true;
    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.x[basis[i]] = t(i, cols - 1);
    out.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) out.value += obj[j] * out.x[j];
    return out;
}

// Extreme value of sum w u^p over nonnegative grid measures matching the
// given moments. maximize = false minimizes.
inline std::optional<double> grid_lp_moment_optimum(const kolmo::MomentVector& c, int p,
                                                    bool maximize, double u_lo, double u_hi,
                                                    int points) {
    const std::size_t d = c.size();
    std::vector<double> nodes(points);
    double ratio = std::pow(u_hi / u_lo, 1.0 / (points - 1));
    double u = u_lo;
    for (int j = 0; j < points; ++j, u *= ratio) nodes[j] = u;

    bool zero_node = c.exponents.orders.front() == 0;
    std::size_t n = nodes.size() + (zero_node ? 1 : 0);
    kolmo::linalg::Matrix a(d, n);
    std::vector<double> obj(n, 0.0);
    std::size_t col = 0;
    if (zero_node) {
        for (std::size_t i = 0; i < d; ++i) a(i, col) = (c.exponents.orders[i] == 0) ? 1.0 : 0.0;
        obj[col] = (p == 0) ? 1.0 : 0.0;
        ++col;
    }
    for (double t : nodes) {
        for (std::size_t i = 0; i < d; ++i)
            a(i, col) = kolmo::linalg::powi(t, c.exponents.orders[i]);
        obj[col] = kolmo::linalg::powi(t, p);
        ++col;
    }
    if (!maximize)
        for (double& o : obj) o = -o;
    LpResult r = simplex_max(a, c.values, obj);
    if (!r.feasible) return std::nullopt;
    return maximize ? r.value : -r.value;
}

// ---- random instance generators -------------------------------------------

inline std::vector<int> random_orders(kolmo::Rng& rng, int d, int max_order,
                                      bool force_zero_first = false) {
    std::vector<int> pool;
    for (int i = force_zero_first ? 1 : 0; i <= max_order; ++i) pool.push_back(i);
    // Fisher-Yates prefix
    for (int i = 0; i < d && i < static_cast<int>(pool.size()); ++i) {
        std::size_t j = i + rng.next() % (pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> orders(pool.begin(), pool.begin() + (force_zero_first ? d - 1 : d));
    if (force_zero_first) orders.push_back(0);
    std::sort(orders.begin(), orders.end());
    return orders;
}

// Atoms in [0.1, 10] with pairwise ratio >= sep, masses in [0.1, 10].
inline kolmo::AtomicMeasure random_measure(kolmo::Rng& rng, int n_atoms, bool allow_zero_atom,
                                           double sep = 1.6) {
    std::vector<kolmo::Atom> atoms;
    if (allow_zero_atom && rng.uniform01() < 0.4) atoms.push_back({0.0, rng.log_uniform(0.1, 10.0)});
    std::vector<double> positions;
    for (int tries = 0; static_cast<int>(positions.size()) < n_atoms && tries < 400; ++tries) {
        double u = rng.log_uniform(0.1, 10.0);
        bool ok = true;
        for (double v : positions)
            if (std::max(u / v, v / u) < sep) ok = false;
        if (ok) positions.push_back(u);
    }
    std::sort(positions.begin(), positions.end());
    for (double u : positions) atoms.push_back({u, rng.log_uniform(0.1, 10.0)});
    return kolmo::validate_measure(std::move(atoms));
}

inline kolmo::MomentVector moments_from_measure(const kolmo::AtomicMeasure& mu,
                                                const kolmo::ExponentVector& k) {
    return kolmo::validate_moments(kolmo::moments_of(mu, k), k);
}

}  // namespace oracles
