#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "aco/adapter.hpp"
#include "aco/config.hpp"
#include "aco/pheromone.hpp"
#include "aco/rng.hpp"

namespace aco {

/// Thrown by compute_probabilities when every selection weight is zero or
/// non-finite. select_candidate catches it and falls back to a uniform pick.
class degenerate_weights_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunResult {
    bool found = false;  // false only when no ant ever completed (e.g. 0 iterations)
    double best_fitness = 0.0;
    std::vector<std::size_t> best_solution;
    std::optional<int> first_success_iteration;
    double wall_time_s = 0.0;
    std::vector<double> iteration_trace;  // per-iteration best fitness
};

PheromoneStore init_pheromone(std::size_t edge_count, const SolverConfig& config);

/// Selection weight tau^alpha * eta^beta * DI^gamma for each candidate.
/// Falls back to a log-space evaluation when the direct products overflow.
std::vector<double> selection_weights(std::span<const CandidateView> candidates,
                                      const PheromoneStore& pheromone,
                                      const SolverConfig& config);

/// Normalized selection probabilities; throws degenerate_weights_error when
/// all weights vanish.
std::vector<double> compute_probabilities(std::span<const CandidateView> candidates,
                                          const PheromoneStore& pheromone,
                                          const SolverConfig& config);

/// Pseudo-random-proportional rule: with probability q0 the argmax-weight
/// candidate (ties -> lowest edge id), otherwise an inverse-CDF sample on one
/// uniform draw. Degenerate weights select uniformly.
std::size_t select_candidate(std::span<const CandidateView> candidates,
                             const PheromoneStore& pheromone,
                             const SolverConfig& config, RngStream& rng);

struct ConstructedSolution {
    std::vector<std::size_t> edges;
    double fitness = 0.0;
};

/// Build one complete solution: enumerate, select, apply until the adapter
/// reports completion or no candidate remains, then finalize.
ConstructedSolution construct_solution(ProblemAdapter& adapter,
                                       const PheromoneStore& pheromone,
                                       const SolverConfig& config, RngStream& rng);

using AdapterFactory = std::function<std::unique_ptr<ProblemAdapter>()>;

/// Full iterative search. Each of parallel_ants workers builds
/// sequential_ants solutions per iteration against a read-only pheromone
/// snapshot and submits its best; the iteration best performs the
/// evaporate-then-deposit update. `threads` caps the worker pool size
/// (0 = automatic) and never affects results.
RunResult run(const AdapterFactory& factory, const SolverConfig& config, int threads = 0);

/// Re-evaluate a solution from scratch on a fresh adapter.
double evaluate_solution(ProblemAdapter& adapter, std::span<const std::size_t> edges);

}  // namespace aco
