#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

/// Error codes shared across the library. Operations throw kolmo::Error with
/// the code identifying what went wrong; the CLI maps codes to exit statuses.
enum class errc {
    // validation
    empty,
    not_strictly_increasing,
    order_exceeds_r,
    negative_order,
    invalid_moment_vector,
    invalid_measure,
    invalid_spline,
    invalid_config,
    invalid_argument,
    dimension_mismatch,
    negative_point,
    order_mismatch,
    // solver
    not_interior,
    newton_diverged,
    degenerate_root,
    reduction_failed,
    requires_order_zero,
    // admissibility / applications
    not_admissible,
    non_unique_within_tolerance,
    requires_top_order_r,
    d_requires_at_least_3,
    requires_even_d,
    derivative_exceeds_order,
    positive_t,
    p_not_intermediate,
    top_order_must_be_below_r,
    requires_zero_constant,
    empty_family,
    // io
    parse_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw Error(code, message); }

/// Which function class a spline (or admissibility query) refers to:
/// CM = completely monotone, MM = multiply monotone of order r.
enum class FunctionClass { CM, MM };

/// Two atoms of a measure closer than this relative gap are rejected as
/// invalid rather than silently merged; merging is an explicit operation.
inline constexpr double kAtomDistinctRelTol = 1e-9;

/// Strictly increasing derivative orders 0 <= k_1 < ... < k_d <= r.
/// For the CM class r is a free bookkeeping parameter; for MM it is the
/// class order.
struct ExponentVector {
    std::vector<int> orders;
    int r = 0;

    std::size_t size() const { return orders.size(); }
    int max_order() const { return orders.back(); }
    bool starts_at_zero() const { return orders.front() == 0; }
};

/// Validates and returns an ExponentVector; throws on violation.
ExponentVector validate_exponents(std::vector<int> orders, int r);

/// d nonnegative finite reals paired with the exponents they belong to.
struct MomentVector {
    std::vector<double> values;
    ExponentVector exponents;

    std::size_t size() const { return values.size(); }
    double max_abs() const;
};

MomentVector validate_moments(std::vector<double> values, ExponentVector exponents);

struct Atom {
    double position = 0.0;  // >= 0, on the u-axis of the integral representation
    double mass = 0.0;      // > 0

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite atomic measure on [0, inf): positions strictly increasing,
/// masses positive, at most one atom at position 0.
struct AtomicMeasure {
    std::vector<Atom> atoms;

    bool empty() const { return atoms.empty(); }
    std::size_t size() const { return atoms.size(); }
    bool has_zero_atom() const { return !atoms.empty() && atoms.front().position == 0.0; }
    std::size_t positive_count() const { return atoms.size() - (has_zero_atom() ? 1 : 0); }

    friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;
};

AtomicMeasure validate_measure(std::vector<Atom> atoms);

/// Half-integer counter stored as twice its value, so 1/2 is exact.
/// Used for the index of a representation and for spline knot counts.
struct HalfIndex {
    std::uint32_t twice_value = 0;

    double value() const { return 0.5 * static_cast<double>(twice_value); }
    friend bool operator==(const HalfIndex&, const HalfIndex&) = default;
};

/// Index of a given representation: positive atoms count 1, an atom at 0
/// counts 1/2. (Minimality over representations is the classifier's job.)
HalfIndex index_of(const AtomicMeasure& measure);

/// Perfect spline of either class: positive combination of m exponential or
/// truncated-power pieces with knots a_1 > ... > a_m > 0 plus a constant
/// C >= 0. With C > 0 the spline counts as having m + 1/2 knots.
struct PerfectSpline {
    FunctionClass cls = FunctionClass::CM;
    int r = 1;
    std::vector<double> knots;    // strictly decreasing, > 0
    std::vector<double> weights;  // > 0, same length as knots
    double constant = 0.0;        // C >= 0

    HalfIndex knot_count() const {
        return HalfIndex{static_cast<std::uint32_t>(2 * knots.size() + (constant > 0.0 ? 1 : 0))};
    }
};

PerfectSpline validate_spline(PerfectSpline spline);

enum class Membership { Interior, Boundary, Outside };

const char* membership_name(Membership m);

/// Result of the moment-cone membership test. The witness is present for
/// Interior and Boundary points (possibly the empty measure for c = 0) and
/// its index equals index_of(witness). iterations counts the Newton steps of
/// the winning structured solve (0 for shortcut verdicts).
struct Classification {
    Membership status = Membership::Outside;
    std::optional<AtomicMeasure> witness;
    std::optional<HalfIndex> index;
    int iterations = 0;
};

}  // namespace kolmo
