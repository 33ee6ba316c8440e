#pragma once

#include "kolmo/kolmogorov.hpp"
#include "kolmo/types.hpp"

namespace kolmo {

struct InterpolantResult {
    PerfectSpline spline;
    double minimal_r_norm = 0.0;
};

/// Smoothest Hermite-Birkhoff interpolation at 0: among all class members x
/// with x^(k_i)(0) = M_i, the witness spline minimizes ||x^(r)||; returns it
/// together with that minimal norm. Requires an even number of orders and
/// k_d < r.
InterpolantResult smoothest_interpolant(FunctionClass cls, const MomentVector& m,
                                        const SolverConfig& cfg);

enum class BoundDirection { Upper, Lower };

const char* direction_name(BoundDirection d);

struct MomentBoundResult {
    double bound = 0.0;
    BoundDirection direction = BoundDirection::Upper;
    PerfectSpline spline;
};

/// Sharp one-sided estimate of ||x^(p)|| over all class members matching the
/// 2m prescribed norms; p must fall strictly between two prescribed orders
/// (or before the first / after the last, up to r). Upper bound when an odd
/// number of prescribed orders lies below p, lower bound otherwise. For the
/// CM class this bounds the intermediate moment c_p of the truncated moment
/// problem.
MomentBoundResult intermediate_moment_bound(FunctionClass cls, const MomentVector& m, int p,
                                            const SolverConfig& cfg);

struct ExtremalDistributionResult {
    PerfectSpline spline;
    double max_prob = 0.0;
};

/// Extremal distribution function of a nonpositive random variable with
/// prescribed derivative values at 0 (MM class, k_1 = 0, M_1 = 1, even d):
/// the witness spline minimizes F pointwise, so it maximizes P(xi > A).
ExtremalDistributionResult extremal_distribution(const MomentVector& m, double a,
                                                 const SolverConfig& cfg);

}  // namespace kolmo
