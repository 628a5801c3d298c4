#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aco/adapter.hpp"
#include "aco/config.hpp"

namespace aco::mkp {

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multi-dimensional knapsack instance: n items, m capacity constraints.
/// Weights are stored row-major by constraint.
struct MkpInstance {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> profits;     // [n], all > 0
    std::vector<double> weights;     // [m * n], all >= 0
    std::vector<double> capacities;  // [m], all > 0
    std::optional<double> known_optimum;

    double weight(std::size_t constraint, std::size_t item) const {
        return weights[constraint * n + item];
    }
    double max_profit() const;
    void validate() const;
};

/// Parse the plain-text format: n, m, optimum (0 = unknown), n profits,
/// m rows of n weights, m capacities; whitespace-separated decimals, one
/// instance per file.
MkpInstance parse_mkp(std::string_view text);
MkpInstance load_mkp(const std::string& path);

/// Selection state of one ant: chosen items and remaining capacities.
struct MkpState {
    std::vector<char> selected;        // [n]
    std::vector<double> remaining;     // [m]
    double profit_accum = 0.0;
    std::size_t selected_count = 0;

    explicit MkpState(const MkpInstance& instance);
    void add(const MkpInstance& instance, std::size_t item);
};

/// Items not yet selected that fit every remaining capacity.
std::vector<std::size_t> feasible_items(const MkpInstance& instance, const MkpState& state);

/// P(i) / max profit, in (0, 1].
double normalized_profit(const MkpInstance& instance, std::size_t item);

/// max_j(w_ij / rc_j) + mean_j(w_ij / rc_j) over current remaining
/// capacities. Zero-weight dimensions contribute zero even at rc_j = 0.
double capacity_impact(const MkpInstance& instance, const MkpState& state, std::size_t item);

/// Ceiling used for a weightless item, whose capacity impact is zero.
inline constexpr double kWeightlessDiCeiling = 1e6;

/// normalized_profit / capacity_impact, with the weightless ceiling.
double dynamic_impact_mkp(const MkpInstance& instance, const MkpState& state, std::size_t item);

double mkp_fitness(const MkpInstance& instance, const MkpState& state);

struct BruteForceResult {
    double profit = 0.0;
    std::vector<std::size_t> items;
};

/// Exact optimum by exhaustive enumeration; refuses n > 24. Ties resolve to
/// the lexicographically smallest item set.
BruteForceResult brute_force_optimum(const MkpInstance& instance);

/// Independent feasibility + fitness check of an item set (used by verify).
struct MkpCheck {
    bool feasible = true;
    std::string violation;
    double fitness = 0.0;
};
MkpCheck check_solution(const MkpInstance& instance, const std::vector<std::size_t>& items);

/// Problem adapter binding the instance to the engine. Edge ids are item
/// ids; the heuristic term is fixed at 1.
class MkpAdapter final : public ProblemAdapter {
public:
    explicit MkpAdapter(const MkpInstance& instance);

    std::size_t edge_count() const override { return instance_->n; }
    Sense sense() const override { return Sense::maximize; }
    void reset() override;
    void candidates(std::vector<CandidateView>& out) const override;
    void apply(std::size_t edge_id) override;
    bool complete() const override { return false; }  // runs to empty feasible set
    double fitness() const override { return state_.profit_accum; }

private:
    const MkpInstance* instance_;
    MkpState state_;
};

}  // namespace aco::mkp
