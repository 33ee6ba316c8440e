#include "kolmo/splines.hpp"

#include <cmath>
#include <vector>

#include "kolmo/linalg.hpp"

namespace kolmo {

double factorial(int n) {
    if (n < 0) fail(errc::invalid_argument, "factorial of a negative number");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

PerfectSpline spline_from_measure(FunctionClass cls, int r, const AtomicMeasure& measure_in) {
    AtomicMeasure measure = validate_measure(measure_in.atoms);
    if (r < 1) fail(errc::invalid_spline, "spline order r must be >= 1");
    PerfectSpline s;
    s.cls = cls;
    s.r = r;
    // ascending atom positions map to descending knots a = 1/u
    for (const Atom& a : measure.atoms) {
        if (a.position == 0.0) continue;
        s.knots.push_back(1.0 / a.position);
        s.weights.push_back(a.mass * linalg::powi(a.position, r));
    }
    if (measure.has_zero_atom()) {
        double w0 = measure.atoms.front().mass;
        s.constant = (cls == FunctionClass::CM) ? w0 : w0 / factorial(r);
    }
    return validate_spline(std::move(s));
}

AtomicMeasure measure_from_spline(const PerfectSpline& spline_in) {
    PerfectSpline s = validate_spline(spline_in);
    std::vector<Atom> atoms;
    if (s.constant > 0.0) {
        double w0 = (s.cls == FunctionClass::CM) ? s.constant : s.constant * factorial(s.r);
        atoms.push_back({0.0, w0});
    }
    for (std::size_t i = 0; i < s.knots.size(); ++i)
        atoms.push_back({1.0 / s.knots[i], s.weights[i] * linalg::powi(s.knots[i], s.r)});
    return validate_measure(std::move(atoms));
}

double eval(const PerfectSpline& spline, double t, int derivative) {
    if (derivative < 0) fail(errc::invalid_argument, "derivative order must be >= 0");
    if (t > 0.0) fail(errc::positive_t, "splines are defined on t <= 0");
    if (spline.cls == FunctionClass::MM && derivative > spline.r)
        fail(errc::derivative_exceeds_order, "MM splines have derivatives up to order r");

    double sum = (derivative == 0) ? spline.constant : 0.0;
    if (spline.cls == FunctionClass::CM) {
        int e = spline.r - derivative;
        for (std::size_t i = 0; i < spline.knots.size(); ++i) {
            double a = spline.knots[i];
            double ap = (e >= 0) ? linalg::powi(a, e) : 1.0 / linalg::powi(a, -e);
            sum += spline.weights[i] * ap * std::exp(t / a);
        }
    } else {
        int e = spline.r - derivative;
        double inv_fact = 1.0 / factorial(e);
        for (std::size_t i = 0; i < spline.knots.size(); ++i) {
            double x = spline.knots[i] + t;
            if (x > 0.0) sum += spline.weights[i] * linalg::powi(x, e) * inv_fact;
        }
    }
    return sum;
}

MomentVector norms(const PerfectSpline& spline, const ExponentVector& exponents_in) {
    ExponentVector exponents = validate_exponents(exponents_in.orders, exponents_in.r);
    if (spline.r != exponents.r)
        fail(errc::order_mismatch, "spline order r differs from the exponent vector's r");
    std::vector<double> values(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i)
        values[i] = eval(spline, 0.0, exponents.orders[i]);
    return validate_moments(std::move(values), std::move(exponents));
}

MomentVector class_transfer(const MomentVector& m_in, TransferDirection direction) {
    MomentVector m = validate_moments(m_in.values, m_in.exponents);
    for (std::size_t i = 0; i < m.size(); ++i) {
        double f = factorial(m.exponents.r - m.exponents.orders[i]);
        m.values[i] = (direction == TransferDirection::MMtoCM) ? m.values[i] * f
                                                               : m.values[i] / f;
    }
    return m;
}

}  // namespace kolmo
