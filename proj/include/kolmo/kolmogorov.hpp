#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/moment_cone.hpp"
#include "kolmo/splines.hpp"
#include "kolmo/types.hpp"

namespace kolmo {

enum class Admissibility { Interior, Boundary, NotAdmissible };

const char* admissibility_name(Admissibility a);

/// Answer to "is there a class member whose derivative norms equal M?"
/// The witness spline is present whenever the answer is yes and reproduces
/// the prescribed norms; knot_count uses the m / m+1/2 counting (twice the
/// value stored, like HalfIndex). recursion_trace records which disjunct of
/// the recursive characterization fired at each level (empty for the direct
/// solver).
struct AdmissibilityReport {
    Admissibility status = Admissibility::NotAdmissible;
    std::optional<PerfectSpline> witness;
    std::optional<HalfIndex> knot_count;
    std::vector<std::string> recursion_trace;
    int iterations = 0;
};

/// Direct solution: MM inputs are factorial-transferred to the CM side, the
/// moment-cone classifier decides the status, and the witness measure is
/// converted back into a perfect spline of the requested class.
AdmissibilityReport check_admissible(FunctionClass cls, const MomentVector& m,
                                     const SolverConfig& cfg);

/// The unique spline with the prescribed knot count whose norms at the given
/// orders equal m: d/2 knots for interior points (d must be even there, one
/// position pinned internally when k_1 > 0), at most (d-1)/2 for boundary
/// points. Solved twice from independent grids; disagreement beyond 1e-5
/// relative raises NonUniqueWithinTolerance.
PerfectSpline witness_spline(FunctionClass cls, const MomentVector& m, const SolverConfig& cfg);

/// Cross-validation path: classifies M by the recursive characterization
/// (drop the first order, classify the tail, compare M_{k_1} against the
/// witness spline norm of the tail). Requires d >= 3 and k_d = r.
AdmissibilityReport check_recursive(FunctionClass cls, const MomentVector& m,
                                    const SolverConfig& cfg);

/// `count` random members of the family generating all admissible sets:
/// floor(d/2) knots, log-uniform knots and weights in [0.1, 10], plus a
/// constant for odd d. Pure function of (seed, index). Requires k_1 = 0.
std::vector<PerfectSpline> extremal_family_sample(FunctionClass cls, const ExponentVector& k,
                                                  int count, std::uint64_t seed);

}  // namespace kolmo
