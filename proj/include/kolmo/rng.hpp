#pragma once

#include <cstdint>
#include <cmath>

namespace kolmo {

/// Deterministic, platform-independent generator (splitmix64). Sampling
/// helpers avoid <random> distributions so seeded output is reproducible
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Stream that depends only on (seed, index); items of a batch drawn from
    /// independent streams can be generated in any order.
    static Rng for_index(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed);
        r.state_ ^= 0x9e3779b97f4a7c15ull * (index + 1);
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }

    /// Integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

}  // namespace kolmo
