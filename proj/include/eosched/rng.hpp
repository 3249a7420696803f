#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace eosched {

// Deterministic RNG used by every stochastic component. All draws go through
// the helpers below so a run is reproducible from its single seed; no code
// may pull entropy from anywhere else.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Index of the next success in an iid Bernoulli(p) scan starting at 0,
    // i.e. a geometric skip. Returns a large value when p == 0.
    std::uint64_t geometric_skip(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return UINT64_MAX;
        const double u = 1.0 - uniform01();  // in (0, 1]
        return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace eosched
