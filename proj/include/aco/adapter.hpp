#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "aco/config.hpp"

namespace aco {

/// One selectable edge as seen by the engine at the current construction
/// step. `heuristic` is fixed at search-space preparation; `dynamic_impact`
/// is recomputed by the adapter at every step and must be strictly positive.
struct CandidateView {
    std::size_t edge_id = 0;
    double heuristic = 1.0;
    double dynamic_impact = 1.0;
};

/// Thrown when a problem adapter breaks its own contract (for example a
/// candidate it reported feasible is rejected on apply). Aborts the run.
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The engine's view of an optimization problem. One adapter instance holds
/// the partial-solution state of a single ant; instances are never shared
/// between concurrent ants.
class ProblemAdapter {
public:
    virtual ~ProblemAdapter() = default;

    virtual std::size_t edge_count() const = 0;
    virtual Sense sense() const = 0;

    /// Start a fresh construction from the empty partial solution.
    virtual void reset() = 0;

    /// Feasible candidates for the current state, dynamic impact recomputed.
    /// Enumeration must be deterministic given the state.
    virtual void candidates(std::vector<CandidateView>& out) const = 0;

    /// Apply a candidate previously reported feasible.
    virtual void apply(std::size_t edge_id) = 0;

    /// True once the construction cannot or should not continue.
    virtual bool complete() const = 0;

    /// Deterministic completion step run after selection ends; may append
    /// forced edges to the solution. Default: nothing to do.
    virtual void finalize(std::vector<std::size_t>& solution) { (void)solution; }

    /// Fitness of the current (finalized) solution.
    virtual double fitness() const = 0;
};

}  // namespace aco
