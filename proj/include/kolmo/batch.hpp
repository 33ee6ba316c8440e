#pragma once

#include <span>
#include <vector>

#include "kolmo/chebyshev.hpp"
#include "kolmo/kolmogorov.hpp"
#include "kolmo/moment_cone.hpp"

namespace kolmo {

/// Data-parallel drivers over independent problem instances. Each kernel has
/// a serial reference path (parallel = false) that the tests pin the OpenMP
/// path against; items are pure functions of their inputs, so both paths
/// produce identical results in any thread count.

std::vector<Classification> classify_batch(std::span<const MomentVector> items,
                                           const SolverConfig& cfg, bool parallel);

std::vector<AdmissibilityReport> check_admissible_batch(FunctionClass cls,
                                                        std::span<const MomentVector> items,
                                                        const SolverConfig& cfg, bool parallel);

std::vector<double> vandermonde_batch(const PowerSystem& system,
                                      std::span<const std::vector<double>> point_sets,
                                      bool parallel);

/// Number of threads the parallel paths will use (1 without OpenMP).
int batch_threads();

}  // namespace kolmo
