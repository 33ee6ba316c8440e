#pragma once

#include <optional>
#include <vector>

#include "kolmo/types.hpp"

namespace kolmo {

/// Geometric discretization of the moment curve used by the grid oracle and
/// as the Newton initializer. Node 0 is added when include_zero is set and
/// the first exponent is 0 (for positive first exponents the zero column
/// vanishes identically).
struct GridConfig {
    double u_min = 1e-3;
    double u_max = 1e3;
    int points = 2000;
    bool include_zero = true;
};

struct SolverConfig {
    double feasibility_tol = 1e-8;   // relative to max |c_i|
    double newton_tol = 1e-11;       // relative, exact-structure solves
    int newton_max_iter = 100;
    double boundary_band = 1e-7;     // relative band for boundary detection
    GridConfig grid;
};

void validate_config(const SolverConfig& config);

/// Discretization floor of the grid oracle: the moment curve between
/// adjacent geometric nodes deviates from its chord by about (k * log q)^2
/// relative to the row scale, where q is the node ratio. A nonnegative
/// combination of grid columns cannot certify membership tighter than this,
/// whatever feasibility_tol says.
double grid_resolution_tol(const GridConfig& grid, int k_max);

/// Power moments sum_s w_s u_s^{k_i} of a measure (0^0 = 1, so an atom at 0
/// feeds exactly the order-0 row).
std::vector<double> moments_of(const AtomicMeasure& measure, const ExponentVector& exponents);

/// max_i |moments_of(measure)_i - c_i| relative to max |c_i|.
double moment_residual(const AtomicMeasure& measure, const MomentVector& c);

/// Absolute size of a unit perturbation of the given order's row in the
/// solver's dilation-balanced coordinates: a row change of delta is inside
/// the solver's band exactly when delta <= band * row_band_scale(c, order).
double row_band_scale(const MomentVector& c, int order);

/// Nonnegative-least-squares feasibility over the grid columns. Returns the
/// supporting atoms when the residual is within
/// max(feasibility_tol, grid_resolution_tol); nothing otherwise. Serves as
/// the independent oracle and as the Newton initializer.
std::optional<AtomicMeasure> grid_feasible(const MomentVector& c, const SolverConfig& config);

/// Merges atoms closer than 1e-6 relative (mass-weighted position average),
/// then Caratheodory-reduces to at most d+1 atoms, then polishes the result
/// against c. Throws ReductionFailed when the input does not reproduce c.
AtomicMeasure merge_and_prune(const AtomicMeasure& measure, const MomentVector& c,
                              const SolverConfig& config);

/// Representation of an interior point with index exactly d/2: d/2 positive
/// atoms for even d, an atom at 0 plus (d-1)/2 positive atoms for odd d.
/// Requires k_1 = 0.
AtomicMeasure principal_representation(const MomentVector& c, const SolverConfig& config);

/// Representation of an interior point with index (d+1)/2 containing t_star
/// as a root (held bit-exact). Requires k_1 = 0. Odd d: (d+1)/2 positive
/// atoms; even d: an atom at 0 plus d/2 positive atoms.
AtomicMeasure canonical_representation(const MomentVector& c, double t_star,
                                       const SolverConfig& config);

/// Membership of c in the moment cone. Interior iff an index-d/2
/// representation with all masses above boundary_band exists; Boundary iff a
/// lower-index representation fits within boundary_band; Outside otherwise.
Classification classify(const MomentVector& c, const SolverConfig& config);

}  // namespace kolmo
