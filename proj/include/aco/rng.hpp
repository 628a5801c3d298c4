#pragma once

#include <cstdint>

namespace aco {

/// Counter-based pseudo-random stream (splitmix64). A stream is fully
/// determined by its seeding key, so per-ant streams derived from
/// (seed, iteration, worker, sequential) indices give results that do not
/// depend on thread scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : state_(key) {}

    static RngStream for_ant(std::uint64_t seed, std::uint64_t iteration,
                             std::uint64_t worker, std::uint64_t sequential) {
        std::uint64_t h = mix(seed);
        h = mix(h ^ mix(iteration + 1));
        h = mix(h ^ mix(worker + 1));
        h = mix(h ^ mix(sequential + 1));
        return RngStream(h);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    /// Uniform draw in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [0, n); n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace aco
