#include "kolmo/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kolmo {

namespace {

// Heavy items (full classifications) need dynamic scheduling because their
// cost varies by orders of magnitude; cheap uniform kernels would drown in
// per-item dispatch, so they run statically chunked.
template <typename T, typename Fn>
std::vector<T> run_batch(std::size_t n, bool parallel, bool heavy, Fn&& fn) {
    std::vector<T> out(n);
    if (!parallel) {
        // serial reference path
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::exception_ptr first_error = nullptr;
    auto guarded = [&](long long i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(kolmo_batch_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (heavy) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i) guarded(i);
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i) guarded(i);
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace

std::vector<Classification> classify_batch(std::span<const MomentVector> items,
                                           const SolverConfig& cfg, bool parallel) {
    return run_batch<Classification>(items.size(), parallel, true,
                                     [&](std::size_t i) { return classify(items[i], cfg); });
}

std::vector<AdmissibilityReport> check_admissible_batch(FunctionClass cls,
                                                        std::span<const MomentVector> items,
                                                        const SolverConfig& cfg, bool parallel) {
    return run_batch<AdmissibilityReport>(items.size(), parallel, true, [&](std::size_t i) {
        return check_admissible(cls, items[i], cfg);
    });
}

std::vector<double> vandermonde_batch(const PowerSystem& system,
                                      std::span<const std::vector<double>> point_sets,
                                      bool parallel) {
    return run_batch<double>(point_sets.size(), parallel, false, [&](std::size_t i) {
        return generalized_vandermonde(system, point_sets[i]);
    });
}

int batch_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace kolmo
