#pragma once

#include <span>
#include <vector>

#include "kolmo/types.hpp"

namespace kolmo {

/// The power system u_i(t) = t^{k_i} with strictly increasing nonnegative
/// integer exponents.
struct PowerSystem {
    std::vector<int> exponents;
};

PowerSystem validate_power_system(std::vector<int> exponents);

/// det[ points[i] ^ exponents[j] ] with rows ordered as given and 0^0 = 1.
/// Rows are pre-scaled by their largest entry before the LU factorization to
/// tame the conditioning of power matrices.
double generalized_vandermonde(const PowerSystem& system, std::span<const double> points);

/// True iff the collocation determinant is positive beyond a scale-invariant
/// threshold (1e-10 times the product of row maxima).
bool is_chebyshev_on_points(const PowerSystem& system, std::span<const double> points);

}  // namespace kolmo
