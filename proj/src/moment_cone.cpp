#include "kolmo/moment_cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kolmo/linalg.hpp"
#include "kolmo/nnls.hpp"

namespace kolmo {

void validate_config(const SolverConfig& cfg) {
    if (!(cfg.feasibility_tol > 0.0) || !(cfg.newton_tol > 0.0) || !(cfg.boundary_band > 0.0))
        fail(errc::invalid_config, "tolerances must be positive");
    if (!(cfg.newton_tol < cfg.feasibility_tol))
        fail(errc::invalid_config, "newton_tol must be smaller than feasibility_tol");
    if (cfg.newton_max_iter < 1) fail(errc::invalid_config, "newton_max_iter must be >= 1");
    if (!(cfg.grid.u_min > 0.0) || !(cfg.grid.u_max > cfg.grid.u_min))
        fail(errc::invalid_config, "grid range must satisfy 0 < u_min < u_max");
    if (cfg.grid.points < 2) fail(errc::invalid_config, "grid needs at least 2 points");
}

double grid_resolution_tol(const GridConfig& grid, int k_max) {
    double delta = std::log(grid.u_max / grid.u_min) / (grid.points - 1);
    double s = static_cast<double>(k_max) * delta;
    return s * s;
}

std::vector<double> moments_of(const AtomicMeasure& measure, const ExponentVector& exponents) {
    std::vector<double> m(exponents.size(), 0.0);
    for (const Atom& a : measure.atoms)
        for (std::size_t i = 0; i < exponents.size(); ++i)
            m[i] += a.mass * linalg::powi(a.position, exponents.orders[i]);
    return m;
}

double moment_residual(const AtomicMeasure& measure, const MomentVector& c) {
    std::vector<double> m = moments_of(measure, c.exponents);
    double scale = std::max(c.max_abs(), 1e-300);
    double res = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        res = std::max(res, std::abs(m[i] - c.values[i]) / scale);
    return res;
}

namespace {

constexpr double kMergeRelTol = 1e-6;        // explicit merge threshold
constexpr double kSeparationHealth = 1e-6;   // interior witnesses need split atoms
constexpr double kLogStepCap = 4.0;          // per-iteration cap in log coordinates
constexpr double kPosFloor = 1e-28, kPosCeil = 1e28;
constexpr double kMassFloor = 1e-250, kMassCeil = 1e250;

double clamp_pos(double u) { return std::clamp(u, kPosFloor, kPosCeil); }
double clamp_mass(double w) { return std::clamp(w, kMassFloor, kMassCeil); }

double linf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double l2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// ---- problem scaling ---------------------------------------------------
//
// Power moments are exponentially ill-conditioned: before solving, positions
// are dilated by sigma = (c_d/c_1)^{1/(k_d-k_1)} and masses by rho so the
// scaled moments have max 1. Dilation covariance makes this exact to undo.

struct Scaling {
    double sigma = 1.0;
    double rho = 1.0;
};

struct ScaledProblem {
    std::vector<int> k;
    std::vector<double> chat;  // normalized moments, max = 1
    Scaling scaling;
};

ScaledProblem make_scaled(const MomentVector& c) {
    ScaledProblem p;
    p.k = c.exponents.orders;
    const double c1 = c.values.front(), cd = c.values.back();
    if (c1 > 0.0 && cd > 0.0 && p.k.back() > p.k.front()) {
        double ls = (std::log(cd) - std::log(c1)) / (p.k.back() - p.k.front());
        p.scaling.sigma = std::exp(std::clamp(ls, -69.0, 69.0));
    }
    p.chat.resize(c.size());
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        p.chat[i] = c.values[i] / std::pow(p.scaling.sigma, p.k[i]);
        m = std::max(m, p.chat[i]);
    }
    p.scaling.rho = std::max(m, 1e-300);
    for (double& v : p.chat) v = std::max(v / p.scaling.rho, 0.0);
    return p;
}

// ---- grid oracle -------------------------------------------------------

struct WeightedPoint {
    double u = 0.0;
    double w = 0.0;
};

struct GridSolution {
    bool available = false;
    std::vector<WeightedPoint> atoms;  // positive nodes, ascending
    double zero_mass = 0.0;
    double residual_inf = 0.0;  // relative (chat has max 1)
};

std::vector<double> grid_nodes(const GridConfig& g) {
    std::vector<double> nodes(g.points);
    double ratio = std::pow(g.u_max / g.u_min, 1.0 / (g.points - 1));
    double u = g.u_min;
    for (int j = 0; j < g.points; ++j, u *= ratio) nodes[j] = u;
    nodes.back() = g.u_max;
    return nodes;
}

GridSolution solve_grid(const ScaledProblem& p, const GridConfig& g) {
    const std::size_t d = p.k.size();
    const bool with_zero = g.include_zero && p.k.front() == 0;
    std::vector<double> nodes = grid_nodes(g);
    const std::size_t n = nodes.size() + (with_zero ? 1 : 0);

    linalg::Matrix a(d, n);
    std::vector<double> colnorm(n, 1.0);
    std::size_t col = 0;
    if (with_zero) {
        for (std::size_t i = 0; i < d; ++i) a(i, col) = (p.k[i] == 0) ? 1.0 : 0.0;
        ++col;
    }
    for (double t : nodes) {
        double cmax = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            a(i, col) = linalg::powi(t, p.k[i]);
            cmax = std::max(cmax, a(i, col));
        }
        colnorm[col] = cmax;
        for (std::size_t i = 0; i < d; ++i) a(i, col) /= cmax;
        ++col;
    }

    NnlsResult r = nnls(a, p.chat);
    GridSolution out;
    out.available = true;
    out.residual_inf = r.residual_inf;
    col = 0;
    if (with_zero) out.zero_mass = r.x[col++] / colnorm[0];
    for (std::size_t j = 0; j < nodes.size(); ++j, ++col)
        if (r.x[col] > 0.0) out.atoms.push_back({nodes[j], r.x[col] / colnorm[col]});
    return out;
}

// ---- structured Newton solves -------------------------------------------

struct StructureSpec {
    int positives = 0;
    bool zero_atom = false;
    int pinned = -1;        // index whose position is held fixed, or -1
    double pinned_u = 0.0;  // scaled coordinate of the pinned root
    int frozen_mass = -1;   // index whose mass is held fixed (continuation)

    int unknowns() const {
        return 2 * positives - (pinned >= 0 ? 1 : 0) - (frozen_mass >= 0 ? 1 : 0) +
               (zero_atom ? 1 : 0);
    }
    int twice_index() const { return 2 * positives + (zero_atom ? 1 : 0); }
};

struct Init {
    std::vector<double> u, w;
    double w0 = 0.0;
};

struct SolveOutcome {
    bool converged = false;
    double residual = std::numeric_limits<double>::infinity();
    std::vector<double> u, w;
    double w0 = 0.0;
    int iterations = 0;
};

void eval_residual(const ScaledProblem& p, const StructureSpec& spec,
                   const std::vector<double>& u, const std::vector<double>& w, double w0,
                   std::vector<double>& f) {
    const std::size_t d = p.k.size();
    f.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double s = (spec.zero_atom && p.k[i] == 0) ? w0 : 0.0;
        for (int j = 0; j < spec.positives; ++j) s += w[j] * linalg::powi(u[j], p.k[i]);
        f[i] = s - p.chat[i];
    }
}

SolveOutcome newton_solve(const ScaledProblem& p, const StructureSpec& spec, Init init,
                          const SolverConfig& cfg, double target, bool weighted_rows = false) {
    const std::size_t d = p.k.size();
    const int np = spec.positives;
    const int nu = spec.unknowns();

    std::vector<double> u = init.u, w = init.w;
    double w0 = spec.zero_atom ? clamp_mass(init.w0) : 0.0;
    for (double& x : u) x = clamp_pos(x);
    for (double& x : w) x = clamp_mass(x);
    if (spec.pinned >= 0) u[spec.pinned] = spec.pinned_u;

    SolveOutcome best;
    std::vector<double> f, ftry, u2(np), w2(np);
    int iter = 0;

    // Optional row weights equalize the influence of small moments; an atom
    // visible only in a small row leaves no footprint in the plain l2
    // objective. Convergence is always judged on the unweighted norm.
    std::vector<double> row_w(d, 1.0);
    if (weighted_rows)
        for (std::size_t i = 0; i < d; ++i) row_w[i] = 1.0 / std::max(p.chat[i], 1e-2);
    auto weighted_l2 = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += v[i] * v[i] * row_w[i] * row_w[i];
        return std::sqrt(s);
    };

    auto record = [&]() {
        eval_residual(p, spec, u, w, w0, f);
        double res = linf(f);
        if (res < best.residual) {
            best.residual = res;
            best.u = u;
            best.w = w;
            best.w0 = w0;
        }
        return res;
    };

    // Keep polishing below the declared target while progress lasts; the
    // quadratic phase usually lands near machine precision in 1-2 extra steps.
    // Narrow-valley crawls legitimately take most of the iteration budget, so
    // the only exits are convergence, a failed line search, and the caps.
    // The approach phase and the ill-conditioned endgame polish get separate
    // budgets of newton_max_iter each.
    const double stop_target = std::max(target * 1e-4, 1e-15);
    int endgame_iters = 0;
    while (true) {
        double res = record();
        if (res <= stop_target) break;
        if (res <= 1e-4 ? (++endgame_iters > cfg.newton_max_iter)
                        : (++iter > cfg.newton_max_iter))
            break;

        linalg::Matrix jac(d, nu);
        int col = 0;
        for (int s = 0; s < np; ++s) {
            if (s != spec.pinned) {
                for (std::size_t i = 0; i < d; ++i)
                    jac(i, col) = row_w[i] * w[s] * p.k[i] * linalg::powi(u[s], p.k[i]);
                ++col;
            }
            if (s != spec.frozen_mass) {
                for (std::size_t i = 0; i < d; ++i)
                    jac(i, col) = row_w[i] * w[s] * linalg::powi(u[s], p.k[i]);
                ++col;
            }
        }
        if (spec.zero_atom) {
            for (std::size_t i = 0; i < d; ++i)
                jac(i, col) = (p.k[i] == 0) ? row_w[i] * w0 : 0.0;
            ++col;
        }

        std::vector<double> rhs(d);
        for (std::size_t i = 0; i < d; ++i) rhs[i] = -row_w[i] * f[i];

        // Step candidates: the plain Newton / Gauss-Newton direction first,
        // then Levenberg-Marquardt steps with growing damping when junk
        // columns (tiny masses) make the Jacobian nearly singular.
        auto step_for = [&](double lambda) -> std::optional<std::vector<double>> {
            if (lambda == 0.0) {
                if (nu == static_cast<int>(d)) return linalg::solve(jac, rhs);
                if (nu < static_cast<int>(d)) return linalg::least_squares(jac, rhs);
                // minimal-norm step: delta = J^T y with (J J^T) y = -f
                linalg::Matrix g(d, d);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) {
                        double s = 0.0;
                        for (int q = 0; q < nu; ++q) s += jac(i, q) * jac(j, q);
                        g(i, j) = s;
                    }
                auto y = linalg::solve(std::move(g), rhs);
                if (!y) return std::nullopt;
                std::vector<double> delta(nu, 0.0);
                for (int q = 0; q < nu; ++q) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < d; ++i) s += jac(i, q) * (*y)[i];
                    delta[q] = s;
                }
                return delta;
            }
            // (J^T J + lambda diag(J^T J) + eps) delta = J^T rhs
            linalg::Matrix g(nu, nu);
            std::vector<double> grad(nu, 0.0);
            for (int a = 0; a < nu; ++a) {
                for (int b = 0; b <= a; ++b) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < d; ++i) s += jac(i, a) * jac(i, b);
                    g(a, b) = g(b, a) = s;
                }
                for (std::size_t i = 0; i < d; ++i) grad[a] += jac(i, a) * rhs[i];
            }
            for (int a = 0; a < nu; ++a) g(a, a) += lambda * (g(a, a) + 1e-30);
            return linalg::solve(std::move(g), std::move(grad));
        };

        double fnorm = weighted_l2(f);
        double w02 = w0;
        auto apply_step = [&](const std::vector<double>& delta, double alpha) {
            int c2 = 0;
            for (int s = 0; s < np; ++s) {
                u2[s] = (s == spec.pinned) ? spec.pinned_u
                                           : clamp_pos(u[s] * std::exp(alpha * delta[c2]));
                if (s != spec.pinned) ++c2;
                w2[s] = (s == spec.frozen_mass) ? w[s]
                                                : clamp_mass(w[s] * std::exp(alpha * delta[c2]));
                if (s != spec.frozen_mass) ++c2;
            }
            if (spec.zero_atom) w02 = clamp_mass(w0 * std::exp(alpha * delta[c2]));
            eval_residual(p, spec, u2, w2, w02, ftry);
        };

        // Far from the solution a greedy damped step makes the long moves.
        // In the endgame (small residual, condition numbers around 1e8) the
        // raw step amplifies residual noise into wild excursions, so every
        // damping level is evaluated and the best landing point taken.
        const bool endgame = res <= 1e-4;
        bool moved = false;
        if (!endgame) {
            for (double lambda : {0.0, 1e-8, 1e-4, 1e-2, 1.0, 1e2, 1e4}) {
                std::optional<std::vector<double>> delta = step_for(lambda);
                if (!delta) continue;
                double dmax = linf(*delta);
                if (dmax > kLogStepCap)
                    for (double& x : *delta) x *= kLogStepCap / dmax;
                double alpha = 1.0;
                for (int h = 0; h < 30 && !moved; ++h, alpha *= 0.5) {
                    apply_step(*delta, alpha);
                    if (weighted_l2(ftry) < fnorm * (1.0 - 1e-9) || linf(ftry) <= target)
                        moved = true;
                }
                if (moved) break;
            }
            if (!moved) break;
        } else {
            double best_try = fnorm;
            std::vector<double> bu, bw;
            double bw0 = w0;
            for (double lambda : {0.0, 1e-10, 1e-7, 1e-4, 1e-2, 1.0}) {
                std::optional<std::vector<double>> delta = step_for(lambda);
                if (!delta) continue;
                double dmax = linf(*delta);
                if (dmax > kLogStepCap)
                    for (double& x : *delta) x *= kLogStepCap / dmax;
                double alpha = 1.0;
                for (int h = 0; h < 8; ++h, alpha *= 0.5) {
                    apply_step(*delta, alpha);
                    double tl2 = weighted_l2(ftry);
                    if (tl2 < best_try) {
                        best_try = tl2;
                        bu = u2;
                        bw = w2;
                        bw0 = w02;
                    }
                }
                if (best_try <= fnorm * 1e-3) break;
            }
            if (best_try >= fnorm * (1.0 - 1e-9) || bu.empty()) break;
            u2 = std::move(bu);
            w2 = std::move(bw);
            w02 = bw0;
        }
        u = u2;
        w = w2;
        if (spec.zero_atom) w0 = w02;
    }
    record();
    best.iterations = iter + endgame_iters;
    best.converged = best.residual <= target;
    return best;
}

// ---- initializers --------------------------------------------------------

// Agglomerative 1-d clustering in log position down to p points; grows by
// splitting the heaviest point when there are too few.
std::vector<WeightedPoint> cluster_to(std::vector<WeightedPoint> pts, int p) {
    if (p <= 0) return {};
    while (static_cast<int>(pts.size()) > p) {
        std::size_t arg = 0;
        double bestgap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double gap = std::log(pts[i + 1].u / pts[i].u);
            if (gap < bestgap) {
                bestgap = gap;
                arg = i;
            }
        }
        double wsum = pts[arg].w + pts[arg + 1].w;
        pts[arg].u = (pts[arg].u * pts[arg].w + pts[arg + 1].u * pts[arg + 1].w) / wsum;
        pts[arg].w = wsum;
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(arg) + 1);
    }
    while (static_cast<int>(pts.size()) < p && !pts.empty()) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].w > pts[arg].w) arg = i;
        WeightedPoint heavy = pts[arg];
        pts[arg] = {heavy.u * std::exp(0.25), heavy.w / 2};
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(arg),
                   {heavy.u * std::exp(-0.25), heavy.w / 2});
        std::sort(pts.begin(), pts.end(),
                  [](const WeightedPoint& a, const WeightedPoint& b) { return a.u < b.u; });
    }
    return pts;
}

// Nonnegative least squares for the masses once positions are fixed; a far
// better starting point than carrying grid masses around.
void fill_masses(const ScaledProblem& p, const StructureSpec& spec, Init& init) {
    const std::size_t d = p.k.size();
    const std::size_t n = init.u.size() + (spec.zero_atom ? 1 : 0);
    linalg::Matrix a(d, n);
    std::vector<double> colnorm(n, 1.0);
    std::size_t col = 0;
    if (spec.zero_atom) {
        for (std::size_t i = 0; i < d; ++i) a(i, col) = (p.k[i] == 0) ? 1.0 : 0.0;
        ++col;
    }
    for (double t : init.u) {
        double cmax = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            a(i, col) = linalg::powi(t, p.k[i]);
            cmax = std::max(cmax, a(i, col));
        }
        cmax = std::max(cmax, 1e-300);
        colnorm[col] = cmax;
        for (std::size_t i = 0; i < d; ++i) a(i, col) /= cmax;
        ++col;
    }
    NnlsResult r = nnls(a, p.chat);
    double wmax = 0.0;
    for (double x : r.x) wmax = std::max(wmax, x);
    double floor_mass = std::max(wmax, 1.0) * 1e-6;
    col = 0;
    if (spec.zero_atom) init.w0 = std::max(r.x[col++] / colnorm[0], floor_mass);
    init.w.resize(init.u.size());
    for (std::size_t s = 0; s < init.u.size(); ++s, ++col)
        init.w[s] = std::max(r.x[col] / colnorm[col], floor_mass);
}

// Variable-projection refinement: masses are always the nonnegative
// least-squares fit for the current positions, and only the positions take
// Gauss-Newton steps. Far larger convergence basin than the full Newton,
// which then finishes the job quadratically.
void varpro_refine(const ScaledProblem& p, const StructureSpec& spec, Init& init, int rounds) {
    const std::size_t d = p.k.size();
    std::vector<int> free_slots;
    for (int s = 0; s < spec.positives; ++s)
        if (s != spec.pinned) free_slots.push_back(s);
    if (free_slots.empty()) {
        fill_masses(p, spec, init);
        return;
    }

    std::vector<double> f(d), ftry(d);
    for (int round = 0; round < rounds; ++round) {
        fill_masses(p, spec, init);
        eval_residual(p, spec, init.u, init.w, init.w0, f);
        double fnorm = l2(f);
        if (linf(f) <= 1e-13) break;

        // atoms whose mass sits at the floor carry no position information;
        // stepping them only drives them into their neighbours
        double wmax = 0.0;
        for (double w : init.w) wmax = std::max(wmax, w);
        std::vector<int> active;
        for (int s : free_slots)
            if (init.w[s] > 1e-5 * wmax) active.push_back(s);
        if (active.empty()) break;

        linalg::Matrix jac(d, active.size());
        for (std::size_t q = 0; q < active.size(); ++q) {
            int s = active[q];
            for (std::size_t i = 0; i < d; ++i)
                jac(i, q) = init.w[s] * p.k[i] * linalg::powi(init.u[s], p.k[i]);
        }
        std::vector<double> rhs(d);
        for (std::size_t i = 0; i < d; ++i) rhs[i] = -f[i];
        auto delta = linalg::least_squares(std::move(jac), std::move(rhs));
        if (!delta) break;
        double dmax = linf(*delta);
        if (dmax > 1.5)
            for (double& x : *delta) x *= 1.5 / dmax;

        bool accepted = false;
        std::vector<double> u2 = init.u;
        double alpha = 1.0;
        for (int h = 0; h < 10; ++h, alpha *= 0.5) {
            for (std::size_t q = 0; q < active.size(); ++q)
                u2[active[q]] = clamp_pos(init.u[active[q]] * std::exp(alpha * (*delta)[q]));
            eval_residual(p, spec, u2, init.w, init.w0, ftry);
            if (l2(ftry) < fnorm * (1.0 - 1e-9)) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        init.u = u2;
    }
    fill_masses(p, spec, init);
}

// Sequential peeling: the atom with the largest position dominates the top
// rows, so the top two row ratios locate it; subtract and repeat. Crude, but
// it respects the graded visibility that defeats cluster-based starts.
std::vector<double> peel_positions(const ScaledProblem& p, int count) {
    const std::size_t d = p.k.size();
    std::vector<double> rho = p.chat;
    std::vector<double> u_out;
    double scale = linf(rho);
    for (int s = 0; s < count; ++s) {
        std::size_t b = d;  // highest row still carrying signal
        for (std::size_t i = d; i-- > 0;) {
            if (rho[i] > 1e-8 * scale) {
                b = i;
                break;
            }
        }
        if (b == d || b == 0) break;
        std::size_t a = b - 1;
        double gap = static_cast<double>(p.k[b] - p.k[a]);
        double u = std::clamp(std::pow(rho[b] / rho[a], 1.0 / gap), 1e-6, 1e6);
        double w = rho[b] / linalg::powi(u, p.k[b]);
        u_out.push_back(u);
        for (std::size_t i = 0; i < d; ++i)
            rho[i] = std::max(rho[i] - w * linalg::powi(u, p.k[i]), 0.0);
    }
    // pad with graded smaller positions when peeling ran out of signal
    while (static_cast<int>(u_out.size()) < count)
        u_out.push_back((u_out.empty() ? 1.0 : u_out.back()) / 3.0);
    return u_out;
}

// Positions from consecutive-moment ratios; robust when the grid solution is
// unavailable or puts everything at the range ends.
std::vector<double> ratio_positions(const ScaledProblem& p, int count) {
    const std::size_t d = p.k.size();
    auto ratio = [&](std::size_t i, std::size_t j) {
        double v = std::pow(p.chat[j] / p.chat[i], 1.0 / (p.k[j] - p.k[i]));
        if (!std::isfinite(v) || v <= 0.0) v = 1.0;
        return std::clamp(v, 1e-8, 1e8);
    };
    double lo = (d >= 2) ? ratio(0, 1) : 1.0;
    double hi = (d >= 2) ? ratio(d - 2, d - 1) : 1.0;
    if (lo > hi) std::swap(lo, hi);
    std::vector<double> u(count);
    if (count == 1) {
        u[0] = std::sqrt(lo * hi);
    } else if (hi / lo < 1.2) {
        double mid = std::sqrt(lo * hi);
        for (int s = 0; s < count; ++s)
            u[s] = mid * std::pow(1.8, s - 0.5 * (count - 1));
    } else {
        for (int s = 0; s < count; ++s)
            u[s] = lo * std::pow(hi / lo, static_cast<double>(s) / (count - 1));
    }
    return u;
}

// Replaces the position nearest the pinned coordinate by the exact pin,
// moves it to slot 0 (the pinned slot is fixed across initializers) and
// nudges neighbours that collide with it.
void apply_pin(const StructureSpec& spec, std::vector<double>& u) {
    if (spec.positives == 0) return;
    std::size_t arg = 0;
    for (std::size_t s = 1; s < u.size(); ++s)
        if (std::abs(std::log(u[s] / spec.pinned_u)) < std::abs(std::log(u[arg] / spec.pinned_u)))
            arg = s;
    std::swap(u[0], u[arg]);
    u[0] = spec.pinned_u;
    for (std::size_t s = 1; s < u.size(); ++s)
        if (std::abs(u[s] - spec.pinned_u) < 1e-3 * spec.pinned_u)
            u[s] = spec.pinned_u * ((u[s] >= spec.pinned_u) ? 1.35 : 1.0 / 1.35);
}

std::vector<Init> make_inits(const ScaledProblem& p, const StructureSpec& spec,
                             const GridSolution& gs, const std::vector<double>& extra_positions) {
    std::vector<Init> inits;
    auto push_positions = [&](std::vector<double> u) {
        if (static_cast<int>(u.size()) != spec.positives) return;
        std::sort(u.begin(), u.end());
        if (spec.pinned >= 0) apply_pin(spec, u);
        Init init;
        init.u = std::move(u);
        fill_masses(p, spec, init);
        if (spec.zero_atom && gs.zero_mass > 0.0) init.w0 = std::max(init.w0, gs.zero_mass);
        Init refined = init;
        varpro_refine(p, spec, refined, 25);
        // keep the raw start too when the refinement moved positions; it
        // occasionally lands in a worse basin
        bool moved = false;
        for (std::size_t s = 0; s < init.u.size(); ++s)
            if (std::abs(std::log(refined.u[s] / init.u[s])) > 0.01) moved = true;
        inits.push_back(std::move(refined));
        if (moved) inits.push_back(std::move(init));
    };

    if (!extra_positions.empty()) push_positions(extra_positions);
    if (gs.available && !gs.atoms.empty()) {
        // junk actives with negligible mass only confuse the clustering
        double wmax = 0.0;
        for (const WeightedPoint& a : gs.atoms) wmax = std::max(wmax, a.w);
        std::vector<WeightedPoint> pts;
        for (const WeightedPoint& a : gs.atoms)
            if (a.w > 1e-3 * wmax) pts.push_back(a);

        std::vector<WeightedPoint> clustered = cluster_to(pts, spec.positives);
        std::vector<double> u(clustered.size());
        for (std::size_t s = 0; s < clustered.size(); ++s) u[s] = clustered[s].u;
        push_positions(std::move(u));

        // the heaviest actives verbatim, when there are enough of them
        if (static_cast<int>(pts.size()) >= spec.positives) {
            std::sort(pts.begin(), pts.end(),
                      [](const WeightedPoint& a, const WeightedPoint& b) { return a.w > b.w; });
            std::vector<double> heavy(static_cast<std::size_t>(spec.positives));
            for (int s = 0; s < spec.positives; ++s) heavy[static_cast<std::size_t>(s)] = pts[s].u;
            push_positions(std::move(heavy));
        }
    }
    if (spec.positives > 0) push_positions(ratio_positions(p, spec.positives));
    if (spec.positives >= 2) push_positions(peel_positions(p, spec.positives));
    if (spec.positives == 0) inits.push_back(Init{{}, {}, std::max(gs.zero_mass, p.chat[0])});
    return inits;
}

// ---- assembling measures -------------------------------------------------

AtomicMeasure build_measure(const SolveOutcome& out, const StructureSpec& spec,
                            const Scaling& scaling, double pinned_true = -1.0) {
    std::vector<Atom> atoms;
    if (spec.zero_atom) atoms.push_back({0.0, scaling.rho * out.w0});
    for (std::size_t s = 0; s < out.u.size(); ++s) {
        double pos = (static_cast<int>(s) == spec.pinned && pinned_true > 0.0)
                         ? pinned_true
                         : scaling.sigma * out.u[s];
        atoms.push_back({pos, scaling.rho * out.w[s]});
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    return validate_measure(std::move(atoms));
}

// An interior verdict needs every atom to genuinely carry weight: its
// largest row contribution (in the normalized moments, max 1) must exceed
// the band. Raw mass is the wrong yardstick: a far atom legitimately owns an
// entire high row with a mass many orders below the band.
bool healthy_interior(const ScaledProblem& p, const SolveOutcome& out, const StructureSpec& spec,
                      double band) {
    if (spec.zero_atom && out.w0 < band) return false;
    for (std::size_t s = 0; s < out.u.size(); ++s) {
        double contrib = 0.0;
        for (int k : p.k) contrib = std::max(contrib, out.w[s] * linalg::powi(out.u[s], k));
        if (contrib < band) return false;
        if (out.u[s] < kPosFloor * 1e2 || out.u[s] > kPosCeil * 1e-2) return false;
    }
    std::vector<double> u = out.u;
    std::sort(u.begin(), u.end());
    for (std::size_t s = 0; s + 1 < u.size(); ++s)
        if ((u[s + 1] - u[s]) <= kSeparationHealth * u[s + 1]) return false;
    return true;
}

// Scale-decoupled relaxation for widely split supports. When the atoms
// separate into a near and a far group, the joint Jacobian is nearly
// singular (the near group is visible only in the lowest rows) and the
// Newton basin shrinks to nothing. Alternating exact sub-solves, each in its
// own dilation against its own rows, sidestep that entirely; a joint polish
// finishes at machine precision.
SolveOutcome two_group_solve(const ScaledProblem& p, const StructureSpec& spec, int n_near,
                             double near_center, double far_center, const SolverConfig& cfg,
                             double target) {
    const std::size_t d = p.k.size();
    const int n_far = spec.positives - n_near;
    const std::size_t near_rows = static_cast<std::size_t>(2 * n_near + (spec.zero_atom ? 1 : 0));
    SolveOutcome failure;
    if (n_near <= 0 || n_far <= 0 || near_rows >= d) return failure;

    // group parameter blocks: positions 0..n_near-1 near, rest far
    std::vector<double> u(spec.positives), w(spec.positives, 0.0);
    for (int s = 0; s < n_near; ++s)
        u[s] = clamp_pos(near_center * std::exp(0.35 * (s - 0.5 * (n_near - 1))));
    for (int s = 0; s < n_far; ++s)
        u[n_near + s] = clamp_pos(far_center * std::exp(0.35 * (s - 0.5 * (n_far - 1))));
    double w0 = spec.zero_atom ? 1e-3 : 0.0;
    {
        Init seed{u, w, w0};
        StructureSpec plain = spec;
        fill_masses(p, plain, seed);
        u = seed.u;
        w = seed.w;
        w0 = seed.w0;
    }

    auto solve_group = [&](bool near) -> bool {
        std::size_t row_lo = near ? 0 : near_rows;
        std::size_t row_hi = near ? near_rows : d;
        int s_lo = near ? 0 : n_near;
        int s_hi = near ? n_near : spec.positives;

        ScaledProblem sub;
        double sigma_g = 1.0;
        for (int s = s_lo; s < s_hi; ++s) sigma_g *= u[s];
        sigma_g = std::pow(sigma_g, 1.0 / (s_hi - s_lo));
        double rho_g = 0.0;
        sub.k.assign(p.k.begin() + static_cast<std::ptrdiff_t>(row_lo),
                     p.k.begin() + static_cast<std::ptrdiff_t>(row_hi));
        sub.chat.resize(row_hi - row_lo);
        for (std::size_t i = row_lo; i < row_hi; ++i) {
            double other = (spec.zero_atom && !near && p.k[i] == 0) ? w0 : 0.0;
            for (int s = 0; s < spec.positives; ++s)
                if (s < s_lo || s >= s_hi) other += w[s] * linalg::powi(u[s], p.k[i]);
            double rhs = std::max(p.chat[i] - other, 1e-300);
            sub.chat[i - row_lo] = rhs / std::pow(sigma_g, p.k[i]);
            rho_g = std::max(rho_g, sub.chat[i - row_lo]);
        }
        for (double& v : sub.chat) v /= rho_g;

        StructureSpec sub_spec;
        sub_spec.positives = s_hi - s_lo;
        sub_spec.zero_atom = spec.zero_atom && near;
        Init sub_init;
        for (int s = s_lo; s < s_hi; ++s) sub_init.u.push_back(u[s] / sigma_g);
        // masses must be refit on the subproblem; the joint fit starves atoms
        // the other group can imitate
        fill_masses(sub, sub_spec, sub_init);
        SolveOutcome out = newton_solve(sub, sub_spec, std::move(sub_init), cfg, cfg.newton_tol);
        if (out.residual > 1e-6 && !out.converged) return false;
        for (int s = s_lo; s < s_hi; ++s) {
            u[s] = clamp_pos(out.u[static_cast<std::size_t>(s - s_lo)] * sigma_g);
            w[s] = clamp_mass(out.w[static_cast<std::size_t>(s - s_lo)] * rho_g);
        }
        if (sub_spec.zero_atom) w0 = clamp_mass(out.w0 * rho_g);
        return true;
    };

    std::vector<double> f;
    for (int round = 0; round < 12; ++round) {
        bool ok = solve_group(false);  // far first: it dominates everything
        ok = solve_group(true) && ok;
        eval_residual(p, spec, u, w, w0, f);
        if (linf(f) <= target || !ok) break;
    }
    SolveOutcome out = newton_solve(p, spec, Init{u, w, w0}, cfg, target);
    if (!out.converged) {
        SolveOutcome weighted = newton_solve(p, spec, Init{u, w, w0}, cfg, target, true);
        if (weighted.residual < out.residual) out = weighted;
    }
    return out;
}

StructureSpec principal_spec(std::size_t d, bool order_zero) {
    StructureSpec spec;
    if (d % 2 == 0) {
        spec.positives = static_cast<int>(d / 2);
    } else if (order_zero) {
        spec.positives = static_cast<int>((d - 1) / 2);
        spec.zero_atom = true;
    } else {
        // No zero atom is visible when k_1 > 0; an interior point then has a
        // one-parameter family of index-(d+1)/2 representations. The
        // minimal-norm Newton settles on the member nearest the initializer.
        spec.positives = static_cast<int>((d + 1) / 2);
    }
    return spec;
}

// Continuation fallback for stubborn interior instances: representations
// with one extra atom form a small family that the minimal-norm solver finds
// from almost anywhere. Freezing the lightest atom's mass and shrinking it
// stepwise slides along that family to the target-structure endpoint.
SolveOutcome cascade_principal(const ScaledProblem& p, const StructureSpec& target,
                               const GridSolution& gs, const SolverConfig& cfg) {
    StructureSpec wide = target;
    wide.positives += 1;
    SolveOutcome fam;
    for (Init& init : make_inits(p, wide, gs, {})) {
        SolveOutcome out = newton_solve(p, wide, std::move(init), cfg, cfg.newton_tol);
        if (out.residual < fam.residual) fam = out;
        if (fam.converged) break;
    }
    SolveOutcome failure;
    if (!fam.converged) return failure;

    // Candidate atoms to drive out, lightest first; different victims reach
    // different endpoints of the family and only some are the principal one.
    std::vector<std::size_t> order(fam.w.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fam.w[a] < fam.w[b]; });

    for (std::size_t victim : order) {
        SolveOutcome slide = fam;
        StructureSpec frozen = wide;
        frozen.frozen_mass = static_cast<int>(victim);
        for (int step = 0; step < 60; ++step) {
            if (slide.w[victim] < 1e-12) break;
            Init warm{slide.u, slide.w, slide.w0};
            warm.w[victim] = slide.w[victim] * 0.2;
            SolveOutcome out = newton_solve(p, frozen, std::move(warm), cfg, cfg.newton_tol);
            if (!out.converged) break;
            slide = out;
        }
        if (slide.w[victim] > 1e-12) continue;

        Init final_init;
        for (std::size_t s = 0; s < slide.u.size(); ++s) {
            if (s == victim) continue;
            final_init.u.push_back(slide.u[s]);
            final_init.w.push_back(slide.w[s]);
        }
        final_init.w0 = slide.w0;
        SolveOutcome out = newton_solve(p, target, std::move(final_init), cfg, cfg.newton_tol);
        if (out.converged) return out;
    }
    return failure;
}

// One full attempt at a given grid refinement level.
std::optional<Classification> classify_attempt(const ScaledProblem& p, const SolverConfig& cfg,
                                               const GridConfig& grid) {
    const std::size_t d = p.k.size();
    const bool order_zero = p.k.front() == 0;
    GridSolution gs = solve_grid(p, grid);

    // Boundary first: a representation of index below d/2 fitting within the
    // band is definitive (interior points are further than the band from
    // every low-index manifold), and deciding it here keeps the verdict
    // stable for near-boundary instances whose full-index solve could
    // otherwise "converge" with artifact masses.
    for (int j = 2; j < static_cast<int>(d); ++j) {
        if (j % 2 == 1 && !order_zero) continue;
        StructureSpec spec;
        spec.positives = j / 2;
        spec.zero_atom = (j % 2 == 1);
        SolveOutcome best;
        std::vector<Init> ladder_inits = make_inits(p, spec, gs, {});
        for (bool weighted : {false, true}) {
            for (const Init& init : ladder_inits) {
                SolveOutcome out = newton_solve(p, spec, init, cfg, cfg.boundary_band, weighted);
                if (out.residual < best.residual) best = out;
                if (best.converged) break;
            }
            if (best.converged) break;
        }
        if (!best.converged) continue;
        try {
            AtomicMeasure witness = build_measure(best, spec, p.scaling);
            return Classification{Membership::Boundary, witness, index_of(witness),
                                  best.iterations};
        } catch (const Error&) {
            continue;
        }
    }

    // Interior: a full-index representation with healthy masses.
    StructureSpec ps = principal_spec(d, order_zero);
    SolveOutcome best_principal;
    std::vector<Init> principal_inits = make_inits(p, ps, gs, {});
    for (bool weighted : {false, true}) {
        for (const Init& init : principal_inits) {
            SolveOutcome out = newton_solve(p, ps, init, cfg, cfg.newton_tol, weighted);
            if (out.residual < best_principal.residual) best_principal = out;
            if (best_principal.converged) break;
        }
        if (best_principal.converged) break;
    }
    if (!best_principal.converged) {
        SolveOutcome cascaded = cascade_principal(p, ps, gs, cfg);
        if (cascaded.converged) best_principal = cascaded;
    }
    if (!best_principal.converged && ps.positives >= 2) {
        // Residual-seeded retry: a dominated atom shows up only in the
        // residual of the one-atom-fewer fit; its rows are that atom's
        // moments, so two of them locate it.
        StructureSpec sub = ps;
        sub.positives -= 1;
        SolveOutcome fit;
        for (Init& init : make_inits(p, sub, gs, {})) {
            SolveOutcome out = newton_solve(p, sub, std::move(init), cfg, cfg.boundary_band);
            if (out.residual < fit.residual) fit = out;
        }
        if (std::isfinite(fit.residual)) {
            std::vector<double> f;
            eval_residual(p, sub, fit.u, fit.w, fit.w0, f);
            std::size_t ra = 0;
            for (std::size_t i = 1; i < f.size(); ++i)
                if (std::abs(f[i]) > std::abs(f[ra])) ra = i;
            std::size_t rb = (ra == 0) ? 1 : 0;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != ra && std::abs(f[i]) > std::abs(f[rb])) rb = i;
            double gap = static_cast<double>(p.k[rb] - p.k[ra]);
            double ratio = std::abs(f[rb]) / std::max(std::abs(f[ra]), 1e-300);
            double u_star = std::clamp(std::pow(ratio, 1.0 / gap), 1e-6, 1e6);
            double w_star =
                std::clamp(std::abs(f[ra]) / linalg::powi(u_star, p.k[ra]), 1e-12, 1e12);
            Init seeded{fit.u, fit.w, fit.w0};
            seeded.u.push_back(u_star);
            seeded.w.push_back(w_star);
            for (bool weighted : {false, true}) {
                SolveOutcome out = newton_solve(p, ps, seeded, cfg, cfg.newton_tol, weighted);
                if (out.converged) {
                    best_principal = out;
                    break;
                }
            }
        }
    }
    if (!best_principal.converged && !best_principal.u.empty()) {
        // Restarts from the best stalled point. Plain jitters shake off
        // shallow local minima; repair moves fix the typical stall shape of
        // a starved atom parked next to an unsplit pair.
        std::vector<Init> retries;
        for (double pattern : {0.3, -0.3, 0.6, -0.6}) {
            Init jittered{best_principal.u, best_principal.w, best_principal.w0};
            for (std::size_t s = 0; s < jittered.u.size(); ++s)
                jittered.u[s] =
                    clamp_pos(jittered.u[s] * std::exp((s % 2 == 0) ? pattern : -pattern));
            retries.push_back(std::move(jittered));
        }
        if (best_principal.u.size() >= 2) {
            for (std::size_t drop = 0; drop < best_principal.u.size(); ++drop) {
                for (std::size_t split = 0; split < best_principal.u.size(); ++split) {
                    if (split == drop) continue;
                    for (double delta : {0.2, 0.45, 0.8}) {
                        Init repaired{best_principal.u, best_principal.w, best_principal.w0};
                        repaired.u[drop] = clamp_pos(best_principal.u[split] * std::exp(-delta));
                        repaired.u[split] = clamp_pos(best_principal.u[split] * std::exp(delta));
                        retries.push_back(std::move(repaired));
                    }
                }
            }
            // revive a starved atom well below the current support; covers
            // structure hiding next to the zero atom or at tiny positions
            double u_min = *std::min_element(best_principal.u.begin(), best_principal.u.end());
            for (std::size_t drop = 0; drop < best_principal.u.size(); ++drop) {
                for (double shift : {1.2, 2.5}) {
                    Init revived{best_principal.u, best_principal.w, best_principal.w0};
                    revived.u[drop] = clamp_pos(u_min * std::exp(-shift));
                    retries.push_back(std::move(revived));
                }
            }
        }
        for (Init& retry : retries) {
            fill_masses(p, ps, retry);
            for (bool weighted : {false, true}) {
                SolveOutcome out = newton_solve(p, ps, retry, cfg, cfg.newton_tol, weighted);
                if (out.residual < best_principal.residual) best_principal = out;
            }
            if (best_principal.converged) break;
        }
    }
    if (!best_principal.converged && ps.positives >= 2 && gs.atoms.size() >= 2) {
        // Split support: decouple the scales at every substantial gap. Grid
        // actives are weighted by their largest row contribution; raw masses
        // mislead here because an edge active playing quasi-zero-atom for
        // k_1 > 0 carries a huge mass with a negligible footprint.
        std::vector<WeightedPoint> marks;
        double top = 0.0;
        for (const WeightedPoint& a : gs.atoms) {
            double contrib = 0.0;
            for (int kk : p.k) contrib = std::max(contrib, a.w * linalg::powi(a.u, kk));
            marks.push_back({a.u, contrib});
            top = std::max(top, contrib);
        }
        std::erase_if(marks, [&](const WeightedPoint& m) { return m.w < 1e-4 * top; });
        auto center = [&](std::size_t lo, std::size_t hi) {
            double lw = 0.0, lsum = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                lw += marks[i].w;
                lsum += marks[i].w * std::log(marks[i].u);
            }
            return std::exp(lsum / std::max(lw, 1e-300));
        };
        for (std::size_t cut = 0; cut + 1 < marks.size() && !best_principal.converged; ++cut) {
            double gap = std::log(marks[cut + 1].u / marks[cut].u);
            if (gap < std::log(3.0)) continue;
            double near_center = center(0, cut + 1);
            double far_center = center(cut + 1, marks.size());
            for (int n_near = 1; n_near < ps.positives; ++n_near) {
                SolveOutcome out =
                    two_group_solve(p, ps, n_near, near_center, far_center, cfg, cfg.newton_tol);
                if (out.residual < best_principal.residual) best_principal = out;
                if (best_principal.converged) break;
            }
        }
    }
    if (best_principal.converged && healthy_interior(p, best_principal, ps, cfg.boundary_band)) {
        try {
            AtomicMeasure witness = build_measure(best_principal, ps, p.scaling);
            return Classification{Membership::Interior, witness, index_of(witness),
                                  best_principal.iterations};
        } catch (const Error&) {
            // collided atoms: effectively a lower index, but the ladder
            // already ruled that out at this refinement level
        }
    }
    return std::nullopt;
}

// Zero-entry patterns force the structure of any representing measure and
// are decided exactly, before any numerics.
std::optional<Classification> classify_zero_patterns(const MomentVector& c) {
    const auto& k = c.exponents.orders;
    const auto& v = c.values;
    const std::size_t d = v.size();

    bool all_zero = std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    if (all_zero)
        return Classification{Membership::Boundary, AtomicMeasure{}, HalfIndex{0}};

    bool zero_among_positive_orders = false;
    bool positive_among_positive_orders = false;
    for (std::size_t i = 0; i < d; ++i) {
        if (k[i] == 0) continue;
        (v[i] == 0.0 ? zero_among_positive_orders : positive_among_positive_orders) = true;
    }
    if (k.front() == 0 && v.front() == 0.0) {
        // no mass at all, yet some entry is positive
        return Classification{Membership::Outside, std::nullopt, std::nullopt};
    }
    if (zero_among_positive_orders) {
        if (positive_among_positive_orders)
            return Classification{Membership::Outside, std::nullopt, std::nullopt};
        // c = (c_1, 0, ..., 0) with k_1 = 0: the zero atom alone
        AtomicMeasure witness = validate_measure({{0.0, v.front()}});
        Membership status = (d == 1) ? Membership::Interior : Membership::Boundary;
        return Classification{status, witness, index_of(witness)};
    }
    return std::nullopt;
}

}  // namespace

double row_band_scale(const MomentVector& c_in, int order) {
    MomentVector c = validate_moments(c_in.values, c_in.exponents);
    ScaledProblem p = make_scaled(c);
    return std::pow(p.scaling.sigma, order) * p.scaling.rho;
}

Classification classify(const MomentVector& c_in, const SolverConfig& cfg) {
    validate_config(cfg);
    MomentVector c = validate_moments(c_in.values, c_in.exponents);
    if (auto special = classify_zero_patterns(c)) return *special;

    const std::size_t d = c.size();
    if (d == 1) {
        // Single positive moment: always attainable, one atom (at 0 when
        // k_1 = 0, pinned at 1 otherwise).
        AtomicMeasure witness =
            (c.exponents.orders[0] == 0)
                ? validate_measure({{0.0, c.values[0]}})
                : validate_measure({{1.0, c.values[0]}});
        return Classification{Membership::Interior, witness, index_of(witness)};
    }

    ScaledProblem p = make_scaled(c);
    for (int attempt = 0; attempt < 2; ++attempt) {
        GridConfig g = cfg.grid;
        if (attempt == 1) {
            g.points *= 2;
            g.u_min /= 32.0;
            g.u_max *= 32.0;
        }
        if (auto res = classify_attempt(p, cfg, g)) return *res;
    }
    return Classification{Membership::Outside, std::nullopt, std::nullopt};
}

std::optional<AtomicMeasure> grid_feasible(const MomentVector& c_in, const SolverConfig& cfg) {
    validate_config(cfg);
    MomentVector c = validate_moments(c_in.values, c_in.exponents);
    if (auto special = classify_zero_patterns(c)) {
        if (special->status == Membership::Outside) return std::nullopt;
        return special->witness;
    }

    ScaledProblem p = make_scaled(c);
    GridSolution gs = solve_grid(p, cfg.grid);
    double accept = std::max(cfg.feasibility_tol,
                             grid_resolution_tol(cfg.grid, c.exponents.max_order()));
    if (!gs.available || gs.residual_inf > accept) return std::nullopt;

    std::vector<Atom> atoms;
    if (gs.zero_mass > 0.0) atoms.push_back({0.0, p.scaling.rho * gs.zero_mass});
    for (const WeightedPoint& a : gs.atoms)
        atoms.push_back({p.scaling.sigma * a.u, p.scaling.rho * a.w});
    return validate_measure(std::move(atoms));
}

AtomicMeasure merge_and_prune(const AtomicMeasure& measure_in, const MomentVector& c_in,
                              const SolverConfig& cfg) {
    validate_config(cfg);
    MomentVector c = validate_moments(c_in.values, c_in.exponents);
    AtomicMeasure measure = validate_measure(measure_in.atoms);
    const std::size_t d = c.size();

    double tol_in = std::max(cfg.feasibility_tol,
                             grid_resolution_tol(cfg.grid, c.exponents.max_order()));
    if (moment_residual(measure, c) > tol_in)
        fail(errc::reduction_failed, "input measure does not reproduce c");

    // merge pass
    std::vector<Atom> atoms = measure.atoms;
    for (std::size_t i = 0; i + 1 < atoms.size();) {
        if (atoms[i].position > 0.0 &&
            atoms[i + 1].position - atoms[i].position < kMergeRelTol * atoms[i + 1].position) {
            double wsum = atoms[i].mass + atoms[i + 1].mass;
            atoms[i].position =
                (atoms[i].position * atoms[i].mass + atoms[i + 1].position * atoms[i + 1].mass) /
                wsum;
            atoms[i].mass = wsum;
            atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        } else {
            ++i;
        }
    }

    // Caratheodory: while more atoms than constraints, a null combination of
    // the columns removes one without changing the moments.
    while (atoms.size() > d) {
        std::size_t m = d + 1;
        linalg::Matrix v(d, m);
        std::vector<double> colnorm(m, 1.0);
        for (std::size_t s = 0; s < m; ++s) {
            double cmax = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                v(i, s) = linalg::powi(atoms[s].position, c.exponents.orders[i]);
                cmax = std::max(cmax, std::abs(v(i, s)));
            }
            colnorm[s] = std::max(cmax, 1e-300);
            for (std::size_t i = 0; i < d; ++i) v(i, s) /= colnorm[s];
        }
        std::vector<double> eta = linalg::null_vector(v);
        for (std::size_t s = 0; s < m; ++s) eta[s] /= colnorm[s];
        bool any_positive = std::any_of(eta.begin(), eta.end(), [](double x) { return x > 0.0; });
        if (!any_positive)
            for (double& x : eta) x = -x;
        double theta = std::numeric_limits<double>::infinity();
        std::size_t drop = m;
        for (std::size_t s = 0; s < m; ++s) {
            if (eta[s] > 0.0 && atoms[s].mass / eta[s] < theta) {
                theta = atoms[s].mass / eta[s];
                drop = s;
            }
        }
        if (drop == m) fail(errc::reduction_failed, "no removable atom found");
        for (std::size_t s = 0; s < m; ++s) atoms[s].mass -= theta * eta[s];
        atoms[drop].mass = 0.0;
        std::erase_if(atoms, [](const Atom& a) { return a.mass <= 0.0; });
    }

    // Collapse search: smallest positive-atom count whose free-position
    // polish still reproduces c.
    bool zero_atom = !atoms.empty() && atoms.front().position == 0.0;
    std::vector<WeightedPoint> positives;
    for (const Atom& a : atoms)
        if (a.position > 0.0) positives.push_back({a.position, a.mass});

    ScaledProblem p = make_scaled(c);
    for (WeightedPoint& pt : positives) {
        pt.u /= p.scaling.sigma;
        pt.w /= p.scaling.rho;
    }
    double zero_mass = zero_atom ? atoms.front().mass / p.scaling.rho : 0.0;

    for (int count = positives.empty() ? 0 : 1; count <= static_cast<int>(positives.size());
         ++count) {
        StructureSpec spec;
        spec.positives = count;
        spec.zero_atom = zero_atom;
        std::vector<WeightedPoint> pts = cluster_to(positives, count);
        Init init;
        for (const WeightedPoint& pt : pts) init.u.push_back(pt.u);
        fill_masses(p, spec, init);
        if (zero_atom) init.w0 = std::max(init.w0, zero_mass);
        SolveOutcome out = newton_solve(p, spec, std::move(init), cfg, cfg.newton_tol);
        if (out.residual > cfg.feasibility_tol) continue;
        try {
            AtomicMeasure reduced = build_measure(out, spec, p.scaling);
            if (moment_residual(reduced, c) <= cfg.feasibility_tol) return reduced;
        } catch (const Error&) {
            continue;
        }
    }

    // No collapse met the tight tolerance; return the reduced atom set as-is
    // when it still satisfies the (grid-aware) input tolerance.
    AtomicMeasure reduced = validate_measure(std::move(atoms));
    if (moment_residual(reduced, c) > tol_in)
        fail(errc::reduction_failed, "reduction lost the moments");
    return reduced;
}

AtomicMeasure principal_representation(const MomentVector& c, const SolverConfig& cfg) {
    validate_config(cfg);
    MomentVector v = validate_moments(c.values, c.exponents);
    if (v.exponents.orders.front() != 0)
        fail(errc::requires_order_zero, "principal representation requires k_1 = 0");
    Classification cls = classify(v, cfg);
    if (cls.status == Membership::Interior) return *cls.witness;
    if (cls.status == Membership::Outside && grid_feasible(v, cfg))
        fail(errc::newton_diverged, "grid accepts c but no structured solve converged");
    fail(errc::not_interior, "c is not an interior point of the moment cone");
}

AtomicMeasure canonical_representation(const MomentVector& c, double t_star,
                                       const SolverConfig& cfg) {
    validate_config(cfg);
    MomentVector v = validate_moments(c.values, c.exponents);
    if (v.exponents.orders.front() != 0)
        fail(errc::requires_order_zero, "canonical representation requires k_1 = 0");
    if (!(t_star > 0.0) || !std::isfinite(t_star))
        fail(errc::invalid_moment_vector, "t_star must be positive and finite");

    Classification cls = classify(v, cfg);
    if (cls.status != Membership::Interior)
        fail(errc::not_interior, "c is not an interior point of the moment cone");

    const std::size_t d = v.size();
    ScaledProblem p = make_scaled(v);
    StructureSpec spec;
    spec.zero_atom = (d % 2 == 0);
    spec.positives = static_cast<int>(spec.zero_atom ? d / 2 : (d + 1) / 2);
    spec.pinned = 0;  // the pinned root lives in slot 0
    spec.pinned_u = t_star / p.scaling.sigma;

    // Initializers: the principal witness with the pin inserted, then the
    // generic grid/ratio starts.
    std::vector<double> from_principal;
    for (const Atom& a : cls.witness->atoms)
        if (a.position > 0.0) from_principal.push_back(a.position / p.scaling.sigma);
    if (spec.zero_atom) {
        // principal (even d) has d/2 positive atoms; replace the one nearest
        // the pin (apply_pin does it when sizes match)
    } else {
        from_principal.push_back(spec.pinned_u);  // odd d: principal has one fewer positive
    }

    GridSolution gs = solve_grid(p, cfg.grid);
    SolveOutcome best;
    for (Init& init : make_inits(p, spec, gs, from_principal)) {
        SolveOutcome out = newton_solve(p, spec, std::move(init), cfg, cfg.newton_tol);
        if (out.residual < best.residual) best = out;
        if (best.converged) break;
    }
    if (!best.converged) {
        // Continuation in the pinned root. The canonical representations form
        // a family parameterized by the root: near 0 (odd d) the pinned atom
        // degenerates into the zero atom of the principal representation, and
        // near a principal root (even d) the zero-atom mass vanishes. Start
        // at such a known configuration and slide the pin to the target.
        std::vector<double> pu, pw;
        double pw0 = 0.0;
        for (const Atom& a : cls.witness->atoms) {
            if (a.position == 0.0) {
                pw0 = a.mass / p.scaling.rho;
            } else {
                pu.push_back(a.position / p.scaling.sigma);
                pw.push_back(a.mass / p.scaling.rho);
            }
        }
        double target_pin = spec.pinned_u;
        Init walk;
        double t0;
        if (!spec.zero_atom) {
            // odd d: pinned atom enters from 0 carrying the zero atom's mass
            double u_min = pu.empty() ? target_pin : *std::min_element(pu.begin(), pu.end());
            t0 = std::min(target_pin, u_min) * 0.02;
            walk.u.assign(1, t0);
            walk.u.insert(walk.u.end(), pu.begin(), pu.end());
            walk.w.assign(1, std::max(pw0, 1e-6));
            walk.w.insert(walk.w.end(), pw.begin(), pw.end());
        } else {
            // even d: start beside the principal root nearest the target
            std::size_t nearest = 0;
            for (std::size_t s = 1; s < pu.size(); ++s)
                if (std::abs(std::log(pu[s] / target_pin)) <
                    std::abs(std::log(pu[nearest] / target_pin)))
                    nearest = s;
            t0 = pu[nearest] * ((target_pin > pu[nearest]) ? 1.2 : 1.0 / 1.2);
            walk.u.assign(1, t0);
            walk.w.assign(1, pw[nearest]);
            for (std::size_t s = 0; s < pu.size(); ++s) {
                if (s == nearest) continue;
                walk.u.push_back(pu[s]);
                walk.w.push_back(pw[s]);
            }
            walk.w0 = 1e-4;
        }
        auto slide = [&](Init start, double from) -> SolveOutcome {
            SolveOutcome done;
            int steps = std::clamp(
                static_cast<int>(std::ceil(std::abs(std::log(target_pin / from)) / 0.3)), 4, 60);
            StructureSpec moving = spec;
            Init w = std::move(start);
            for (int step = 1; step <= steps; ++step) {
                moving.pinned_u = (step == steps)
                                      ? target_pin
                                      : from * std::exp(std::log(target_pin / from) * step /
                                                        static_cast<double>(steps));
                SolveOutcome out = newton_solve(p, moving, w, cfg, cfg.newton_tol);
                if (!out.converged) return done;
                w.u = out.u;
                w.w = out.w;
                w.w0 = out.w0;
                w.u[0] = moving.pinned_u;
                if (step == steps) done = out;
            }
            return done;
        };
        best = slide(walk, t0);

        if (!best.converged && !spec.zero_atom && d >= 3) {
            // The pin is only a local coordinate on the canonical family: it
            // folds back at a principal root, and a target beyond the fold is
            // reachable only as the largest root. Enter from far above with a
            // vanishing mass over a deflated principal of the lower rows.
            double u_max = pu.empty() ? target_pin : *std::max_element(pu.begin(), pu.end());
            double t_big = 30.0 * std::max(target_pin, u_max);
            double w_big = p.chat.back() / linalg::powi(t_big, p.k.back());

            ScaledProblem sub;
            sub.k.assign(p.k.begin(), p.k.end() - 1);
            sub.chat.resize(d - 1);
            double sub_rho = 0.0;
            for (std::size_t i = 0; i + 1 < d; ++i) {
                sub.chat[i] = std::max(p.chat[i] - w_big * linalg::powi(t_big, p.k[i]), 1e-300);
                sub_rho = std::max(sub_rho, sub.chat[i]);
            }
            for (double& x : sub.chat) x /= sub_rho;
            StructureSpec sub_spec;
            sub_spec.positives = static_cast<int>((d - 1) / 2);
            Init sub_init;
            sub_init.u = ratio_positions(sub, sub_spec.positives);
            fill_masses(sub, sub_spec, sub_init);
            SolveOutcome sub_out = newton_solve(sub, sub_spec, std::move(sub_init), cfg,
                                                cfg.newton_tol);
            if (sub_out.converged) {
                Init down;
                down.u.assign(1, t_big);
                down.w.assign(1, std::max(w_big, kMassFloor));
                for (std::size_t s = 0; s < sub_out.u.size(); ++s) {
                    down.u.push_back(sub_out.u[s]);
                    down.w.push_back(sub_out.w[s] * sub_rho);
                }
                best = slide(std::move(down), t_big);
            }
            if (!best.converged) {
                // Both continuations folded before reaching the root: for
                // gapped exponents the canonical family between the two
                // principal configurations passes through mass at infinity,
                // which no finite atomic measure represents. (The classical
                // index convention counts that escaping mass as 1/2.)
                fail(errc::degenerate_root,
                     "no finite atomic representation of this index holds the prescribed root");
            }
        }
    }
    if (!best.converged)
        fail(errc::newton_diverged, "canonical solve did not converge");

    // When t_star coincides with a principal root the representation
    // degenerates: a mass vanishes or a free root drifts to 0.
    for (double w : best.w)
        if (w < cfg.boundary_band) fail(errc::degenerate_root, "a mass fell below tolerance");
    if (spec.zero_atom && best.w0 < cfg.boundary_band)
        fail(errc::degenerate_root, "the zero-atom mass fell below tolerance");
    for (std::size_t s = 0; s < best.u.size(); ++s)
        if (static_cast<int>(s) != spec.pinned && best.u[s] < cfg.boundary_band)
            fail(errc::degenerate_root, "a free root degenerated toward 0");

    try {
        return build_measure(best, spec, p.scaling, t_star);
    } catch (const Error&) {
        fail(errc::degenerate_root, "roots collided at t_star");
    }
}

}  // namespace kolmo
