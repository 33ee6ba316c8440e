#include "kolmo/chebyshev.hpp"

#include <algorithm>
#include <cmath>

#include "kolmo/linalg.hpp"

namespace kolmo {

PowerSystem validate_power_system(std::vector<int> exponents) {
    if (exponents.empty()) fail(errc::empty, "power system must contain at least one exponent");
    if (exponents.front() < 0) fail(errc::negative_order, "exponents must be >= 0");
    for (std::size_t i = 1; i < exponents.size(); ++i)
        if (exponents[i] <= exponents[i - 1])
            fail(errc::not_strictly_increasing, "exponents must be strictly increasing");
    return PowerSystem{std::move(exponents)};
}

namespace {

struct ScaledDet {
    double det = 0.0;           // determinant of the power matrix
    double row_scale_product = 0.0;  // product of row maxima, for thresholds
};

ScaledDet vandermonde_det(const PowerSystem& system, std::span<const double> points) {
    const std::size_t n = system.exponents.size();
    if (points.size() != n)
        fail(errc::dimension_mismatch, std::to_string(points.size()) + " points for " +
                                           std::to_string(n) + " exponents");
    for (double t : points)
        if (!(t >= 0.0)) fail(errc::negative_point, "points must be >= 0");

    linalg::Matrix m(n, n);
    double scale_product = 1.0;
    std::vector<double> scales(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_max = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = linalg::powi(points[i], system.exponents[j]);
            row_max = std::max(row_max, std::abs(m(i, j)));
        }
        scales[i] = row_max;
        scale_product *= row_max;
        if (row_max > 0.0)
            for (std::size_t j = 0; j < n; ++j) m(i, j) /= row_max;
    }
    if (scale_product == 0.0) return {0.0, 0.0};  // a zero row: determinant vanishes
    return {linalg::lu_determinant(std::move(m)) * scale_product, scale_product};
}

}  // namespace

double generalized_vandermonde(const PowerSystem& system, std::span<const double> points) {
    return vandermonde_det(system, points).det;
}

bool is_chebyshev_on_points(const PowerSystem& system, std::span<const double> points) {
    ScaledDet d = vandermonde_det(system, points);
    return d.det > 1e-10 * d.row_scale_product;
}

}  // namespace kolmo
