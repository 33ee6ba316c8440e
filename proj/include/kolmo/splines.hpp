#pragma once

#include "kolmo/types.hpp"

namespace kolmo {

enum class TransferDirection { MMtoCM, CMtoMM };

/// n! as a double; exact for the orders handled here.
double factorial(int n);

/// Builds the perfect spline generated by an atomic measure: a positive atom
/// (u, w) becomes a piece with knot a = 1/u and weight lambda = w u^r; an
/// atom at 0 becomes the constant (C = w for CM, C = w/r! for MM). Knots
/// come out strictly decreasing.
PerfectSpline spline_from_measure(FunctionClass cls, int r, const AtomicMeasure& measure);

/// Inverse of spline_from_measure.
AtomicMeasure measure_from_spline(const PerfectSpline& spline);

/// Evaluates the spline or one of its derivatives at t <= 0.
/// CM: sum lambda_s a_s^{r-k} e^{t/a_s} (+C at k = 0).
/// MM: (1/(r-k)!) sum lambda_s (a_s+t)_+^{r-k} (+C at k = 0), with the
/// left-limit convention (x)_+^0 = 1 iff x > 0 at k = r.
double eval(const PerfectSpline& spline, double t, int derivative);

/// Uniform norms of the listed derivatives; for these classes they are
/// attained at 0, so this is eval at t = 0 per order.
MomentVector norms(const PerfectSpline& spline, const ExponentVector& exponents);

/// Diagonal factorial transfer between the MM and CM admissible sets:
/// multiplies (MMtoCM) or divides (CMtoMM) entry i by (r - k_i)!.
MomentVector class_transfer(const MomentVector& m, TransferDirection direction);

}  // namespace kolmo
