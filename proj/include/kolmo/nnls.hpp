#pragma once

#include <span>
#include <vector>

#include "kolmo/linalg.hpp"

namespace kolmo {

struct NnlsResult {
    std::vector<double> x;   // x >= 0, one entry per column of a
    double residual_inf = 0.0;
    double residual_l2 = 0.0;
    int iterations = 0;
    bool converged = false;  // false when the iteration cap was hit
};

/// Lawson-Hanson active-set solver for min ||a x - b||_2 over x >= 0.
/// The row count here is at most the number of moment constraints (<= ~8),
/// so the passive-set subproblems are solved by a fresh QR each step.
NnlsResult nnls(const linalg::Matrix& a, std::span<const double> b, int max_iterations = 0);

}  // namespace kolmo
