#include "kolmo/types.hpp"

#include <algorithm>
#include <cmath>

namespace kolmo {

const char* errc_name(errc c) {
    switch (c) {
        case errc::empty: return "Empty";
        case errc::not_strictly_increasing: return "NotStrictlyIncreasing";
        case errc::order_exceeds_r: return "OrderExceedsR";
        case errc::negative_order: return "NegativeOrder";
        case errc::invalid_moment_vector: return "InvalidMomentVector";
        case errc::invalid_measure: return "InvalidMeasure";
        case errc::invalid_spline: return "InvalidSpline";
        case errc::invalid_config: return "InvalidConfig";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::negative_point: return "NegativePoint";
        case errc::order_mismatch: return "OrderMismatch";
        case errc::not_interior: return "NotInterior";
        case errc::newton_diverged: return "NewtonDiverged";
        case errc::degenerate_root: return "DegenerateRoot";
        case errc::reduction_failed: return "ReductionFailed";
        case errc::requires_order_zero: return "RequiresOrderZero";
        case errc::not_admissible: return "NotAdmissible";
        case errc::non_unique_within_tolerance: return "NonUniqueWithinTolerance";
        case errc::requires_top_order_r: return "RequiresTopOrderR";
        case errc::d_requires_at_least_3: return "DRequiresAtLeast3";
        case errc::requires_even_d: return "RequiresEvenD";
        case errc::derivative_exceeds_order: return "DerivativeExceedsOrder";
        case errc::positive_t: return "PositiveT";
        case errc::p_not_intermediate: return "PNotIntermediate";
        case errc::top_order_must_be_below_r: return "TopOrderMustBeBelowR";
        case errc::requires_zero_constant: return "RequiresZeroConstant";
        case errc::empty_family: return "EmptyFamily";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

const char* membership_name(Membership m) {
    switch (m) {
        case Membership::Interior: return "interior";
        case Membership::Boundary: return "boundary";
        case Membership::Outside: return "outside";
    }
    return "?";
}

ExponentVector validate_exponents(std::vector<int> orders, int r) {
    if (orders.empty()) fail(errc::empty, "exponent vector must contain at least one order");
    if (orders.front() < 0)
        fail(errc::negative_order, "order " + std::to_string(orders.front()) + " is negative");
    for (std::size_t i = 1; i < orders.size(); ++i) {
        if (orders[i] <= orders[i - 1])
            fail(errc::not_strictly_increasing,
                 "orders " + std::to_string(orders[i - 1]) + ", " + std::to_string(orders[i]));
    }
    if (orders.back() > r)
        fail(errc::order_exceeds_r,
             "order " + std::to_string(orders.back()) + " exceeds r = " + std::to_string(r));
    return ExponentVector{std::move(orders), r};
}

double MomentVector::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

MomentVector validate_moments(std::vector<double> values, ExponentVector exponents) {
    exponents = validate_exponents(std::move(exponents.orders), exponents.r);
    if (values.size() != exponents.size())
        fail(errc::invalid_moment_vector, std::to_string(values.size()) + " values for " +
                                              std::to_string(exponents.size()) + " orders");
    for (double v : values) {
        if (!std::isfinite(v)) fail(errc::invalid_moment_vector, "non-finite value");
        if (v < 0.0) fail(errc::invalid_moment_vector, "negative value " + std::to_string(v));
    }
    return MomentVector{std::move(values), std::move(exponents)};
}

AtomicMeasure validate_measure(std::vector<Atom> atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        if (!std::isfinite(a.position) || a.position < 0.0)
            fail(errc::invalid_measure, "atom position must be finite and >= 0");
        if (!std::isfinite(a.mass) || a.mass <= 0.0)
            fail(errc::invalid_measure, "atom mass must be finite and > 0");
        if (i > 0) {
            double prev = atoms[i - 1].position;
            if (a.position <= prev)
                fail(errc::invalid_measure, "atom positions must be strictly increasing");
            if (a.position - prev <= kAtomDistinctRelTol * a.position)
                fail(errc::invalid_measure, "atoms closer than relative tolerance 1e-9");
        }
    }
    return AtomicMeasure{std::move(atoms)};
}

HalfIndex index_of(const AtomicMeasure& measure) {
    std::uint32_t twice = 0;
    for (const Atom& a : measure.atoms) twice += (a.position > 0.0) ? 2 : 1;
    return HalfIndex{twice};
}

PerfectSpline validate_spline(PerfectSpline s) {
    if (s.r < 1) fail(errc::invalid_spline, "order r must be >= 1");
    if (s.knots.size() != s.weights.size())
        fail(errc::invalid_spline, "knots and weights must have equal length");
    if (!std::isfinite(s.constant) || s.constant < 0.0)
        fail(errc::invalid_spline, "constant must be finite and >= 0");
    for (std::size_t i = 0; i < s.knots.size(); ++i) {
        if (!std::isfinite(s.knots[i]) || s.knots[i] <= 0.0)
            fail(errc::invalid_spline, "knots must be finite and > 0");
        if (!std::isfinite(s.weights[i]) || s.weights[i] <= 0.0)
            fail(errc::invalid_spline, "weights must be finite and > 0");
        if (i > 0 && s.knots[i] >= s.knots[i - 1])
            fail(errc::invalid_spline, "knots must be strictly decreasing");
    }
    return s;
}

}  // namespace kolmo
