// Compares the serial reference paths against the OpenMP kernels on three
// workloads: cone classification, admissibility checks, and determinant
// sweeps. Prints a timing table with speedups.

#include <chrono>
#include <cstdio>
#include <vector>

#include "kolmo/batch.hpp"
#include "kolmo/rng.hpp"

using namespace kolmo;

namespace {

double seconds(auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

std::vector<MomentVector> random_instances(int n, std::uint64_t seed) {
    std::vector<MomentVector> items;
    items.reserve(n);
    ExponentVector k = validate_exponents({0, 1, 2}, 2);
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::for_index(seed, i);
        std::vector<Atom> atoms;
        double u1 = rng.log_uniform(0.1, 3.0);
        atoms.push_back({u1, rng.log_uniform(0.1, 10.0)});
        if (rng.uniform01() < 0.5) atoms.push_back({u1 * rng.uniform(2.0, 8.0), rng.log_uniform(0.1, 10.0)});
        AtomicMeasure mu = validate_measure(std::move(atoms));
        items.push_back(validate_moments(moments_of(mu, k), k));
    }
    return items;
}

std::vector<std::vector<double>> random_point_sets(int n, std::uint64_t seed) {
    std::vector<std::vector<double>> sets(n);
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::for_index(seed, i);
        std::vector<double> pts(6);
        double t = rng.uniform(0.0, 1.0);
        for (double& x : pts) {
            x = t;
            t += rng.uniform(0.05, 2.0);
        }
        sets[i] = std::move(pts);
    }
    return sets;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
    SolverConfig cfg;
    std::printf("threads: %d\n", batch_threads());

    {
        auto items = random_instances(4000, 17);
        std::vector<Classification> serial_out, parallel_out;
        double ts = seconds([&] { serial_out = classify_batch(items, cfg, false); });
        double tp = seconds([&] { parallel_out = classify_batch(items, cfg, true); });
        report("classify x4000", ts, tp);
    }
    {
        auto items = random_instances(2000, 29);
        std::vector<AdmissibilityReport> serial_out, parallel_out;
        double ts = seconds(
            [&] { serial_out = check_admissible_batch(FunctionClass::MM, items, cfg, false); });
        double tp = seconds(
            [&] { parallel_out = check_admissible_batch(FunctionClass::MM, items, cfg, true); });
        report("check (mm) x2000", ts, tp);
    }
    {
        auto sets = random_point_sets(2'000'000, 43);
        PowerSystem system = validate_power_system({0, 1, 3, 4, 6, 8});
        std::vector<double> serial_out, parallel_out;
        double ts = seconds([&] { serial_out = vandermonde_batch(system, sets, false); });
        double tp = seconds([&] { parallel_out = vandermonde_batch(system, sets, true); });
        report("vandermonde x2e6", ts, tp);
    }
    return 0;
}
