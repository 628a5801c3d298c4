#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aco/config.hpp"

namespace aco {

/// Per-edge trail values clamped to [tau_min, tau_max]. Every entry starts at
/// tau_max; evaporation and deposit clamp on write, so the bounds hold at all
/// observation points.
class PheromoneStore {
public:
    PheromoneStore(std::size_t edge_count, const SolverConfig& config);

    std::size_t size() const { return trail_.size(); }
    double operator[](std::size_t edge) const { return trail_[edge]; }
    std::span<const double> values() const { return trail_; }

    /// tau <- max(tau * (1 - rho), tau_min) on every edge.
    void evaporate(double rho);

    /// tau <- min(tau + rho, tau_max) on each visited edge; throws
    /// std::out_of_range on an invalid edge id.
    void deposit(std::span<const std::size_t> solution, double rho);

    double tau_min() const { return tau_min_; }
    double tau_max() const { return tau_max_; }

private:
    std::vector<double> trail_;
    double tau_min_;
    double tau_max_;
};

}  // namespace aco
