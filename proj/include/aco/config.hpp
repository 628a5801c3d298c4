#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace aco {

enum class Sense { maximize, minimize };

/// True if `a` is a strictly better fitness than `b` under the given sense.
inline bool better(double a, double b, Sense sense) {
    return sense == Sense::maximize ? a > b : a < b;
}

/// True if `fitness` meets `target` (>= for maximize, <= for minimize).
inline bool meets_target(double fitness, double target, Sense sense) {
    return sense == Sense::maximize ? fitness >= target : fitness <= target;
}

/// All solver hyperparameters and run controls.
struct SolverConfig {
    double alpha = 1.0;   // pheromone exponent
    double beta = 0.0;    // heuristic exponent
    double gamma = 0.0;   // dynamic-impact exponent; 0 disables the term
    double rho = 0.1;     // evaporation/deposit rate, in (0,1)
    double q0 = 0.0;      // exploitation probability, in [0,1)
    double tau_max = 1.0;
    double tau_min = 0.001;
    int iterations = 0;
    int parallel_ants = 1;
    int sequential_ants = 1;
    std::uint64_t seed = 0;
    std::optional<double> target_fitness;  // success detection only
    bool stop_on_target = false;           // early exit must be opted into

    void validate() const {
        if (!(alpha >= 0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and >= 0");
        if (!(beta >= 0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
        if (!(gamma >= 0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and >= 0");
        if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
        if (!(q0 >= 0.0 && q0 < 1.0)) throw std::invalid_argument("q0 must lie in [0,1)");
        if (!(tau_max > 0.0)) throw std::invalid_argument("tau_max must be > 0");
        if (!(tau_min > 0.0 && tau_min < tau_max)) throw std::invalid_argument("tau_min must lie in (0, tau_max)");
        if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
        if (parallel_ants < 1) throw std::invalid_argument("parallel_ants must be >= 1");
        if (sequential_ants < 1) throw std::invalid_argument("sequential_ants must be >= 1");
    }
};

}  // namespace aco
