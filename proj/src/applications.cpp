#include "kolmo/applications.hpp"

#include <algorithm>
#include <cmath>

namespace kolmo {

const char* direction_name(BoundDirection d) {
    return d == BoundDirection::Upper ? "upper" : "lower";
}

InterpolantResult smoothest_interpolant(FunctionClass cls, const MomentVector& m,
                                        const SolverConfig& cfg) {
    MomentVector checked = validate_moments(m.values, m.exponents);
    if (checked.size() % 2 != 0)
        fail(errc::requires_even_d, "interpolation needs an even number of prescribed orders");
    if (checked.exponents.max_order() >= checked.exponents.r)
        fail(errc::top_order_must_be_below_r, "the highest prescribed order must be below r");

    InterpolantResult out{witness_spline(cls, checked, cfg), 0.0};
    out.minimal_r_norm = eval(out.spline, 0.0, checked.exponents.r);
    return out;
}

MomentBoundResult intermediate_moment_bound(FunctionClass cls, const MomentVector& m, int p,
                                            const SolverConfig& cfg) {
    MomentVector checked = validate_moments(m.values, m.exponents);
    const auto& k = checked.exponents.orders;
    if (checked.size() % 2 != 0)
        fail(errc::requires_even_d, "moment bounds need an even number of prescribed orders");
    if (p < 0 || p > checked.exponents.r)
        fail(errc::p_not_intermediate, "p must lie in [0, r]");
    if (std::find(k.begin(), k.end(), p) != k.end())
        fail(errc::p_not_intermediate, "p coincides with a prescribed order");

    // Slot index: how many prescribed orders lie below p.
    int slot = static_cast<int>(std::count_if(k.begin(), k.end(), [&](int ki) { return ki < p; }));

    MomentBoundResult out;
    out.spline = witness_spline(cls, checked, cfg);
    out.bound = eval(out.spline, 0.0, p);
    out.direction = (slot % 2 == 1) ? BoundDirection::Upper : BoundDirection::Lower;
    return out;
}

ExtremalDistributionResult extremal_distribution(const MomentVector& m, double a,
                                                 const SolverConfig& cfg) {
    MomentVector checked = validate_moments(m.values, m.exponents);
    if (checked.exponents.orders.front() != 0)
        fail(errc::requires_order_zero, "distribution functions prescribe F(0), so k_1 = 0");
    if (checked.size() % 2 != 0)
        fail(errc::requires_even_d, "an even number of prescribed orders is required");
    if (std::abs(checked.values.front() - 1.0) > 1e-9)
        fail(errc::invalid_argument, "F(0) must equal 1 for a distribution function");
    if (!(a < 0.0))
        fail(errc::invalid_argument, "the threshold A must be negative");

    PerfectSpline spline = witness_spline(FunctionClass::MM, checked, cfg);
    if (spline.constant > 0.0)
        fail(errc::requires_zero_constant,
             "the unique witness needs a constant term, violating F(-inf) = 0; the family is empty");

    ExtremalDistributionResult out{std::move(spline), 0.0};
    out.max_prob = 1.0 - eval(out.spline, a, 0);
    return out;
}

}  // namespace kolmo
