#include "aco/pheromone.hpp"

#include <algorithm>
#include <stdexcept>

namespace aco {

PheromoneStore::PheromoneStore(std::size_t edge_count, const SolverConfig& config)
    : tau_min_(config.tau_min), tau_max_(config.tau_max) {
    config.validate();
    if (edge_count == 0) throw std::invalid_argument("empty search space: edge_count must be >= 1");
    trail_.assign(edge_count, tau_max_);
}

void PheromoneStore::evaporate(double rho) {
    const double keep = 1.0 - rho;
    for (double& tau : trail_) tau = std::max(tau * keep, tau_min_);
}

void PheromoneStore::deposit(std::span<const std::size_t> solution, double rho) {
    for (std::size_t edge : solution) {
        if (edge >= trail_.size()) throw std::out_of_range("deposit: edge id out of range");
        trail_[edge] = std::min(trail_[edge] + rho, tau_max_);
    }
}

}  // namespace aco
