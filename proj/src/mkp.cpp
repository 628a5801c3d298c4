#include "aco/mkp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace aco::mkp {
namespace {

// Whitespace-separated number reader that tracks token positions so parse
// errors can say where they happened.
class TokenReader {
public:
    explicit TokenReader(std::string_view text) : text_(text) {}

    double next(const char* what) {
        skip_ws();
        if (pos_ >= text_.size())
            throw parse_error("token count mismatch: expected " + std::string(what) +
                              " at token " + std::to_string(index_ + 1) + ", input ended");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string tok(text_.substr(start, pos_ - start));
        try {
            std::size_t used = 0;
            const double value = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            ++index_;
            return value;
        } catch (const std::exception&) {
            throw parse_error("bad number '" + tok + "' at token " + std::to_string(index_ + 1) +
                              " (" + what + ")");
        }
    }

    bool exhausted() {
        skip_ws();
        return pos_ >= text_.size();
    }

    std::size_t token_index() const { return index_; }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t index_ = 0;
};

}  // namespace

double MkpInstance::max_profit() const {
    return *std::max_element(profits.begin(), profits.end());
}

void MkpInstance::validate() const {
    if (n == 0 || m == 0) throw parse_error("instance must have n >= 1 items and m >= 1 constraints");
    if (profits.size() != n || weights.size() != n * m || capacities.size() != m)
        throw parse_error("inconsistent instance dimensions");
    for (std::size_t i = 0; i < n; ++i)
        if (!(profits[i] > 0.0)) throw parse_error("profit of item " + std::to_string(i) + " must be > 0");
    for (double w : weights)
        if (!(w >= 0.0)) throw parse_error("weights must be >= 0");
    for (std::size_t j = 0; j < m; ++j)
        if (!(capacities[j] > 0.0))
            throw parse_error("capacity of constraint " + std::to_string(j) + " must be > 0");
}

MkpInstance parse_mkp(std::string_view text) {
    TokenReader in(text);
    MkpInstance inst;
    const double n_raw = in.next("item count n");
    const double m_raw = in.next("constraint count m");
    if (!(n_raw >= 1) || n_raw != std::floor(n_raw)) throw parse_error("n must be a positive integer");
    if (!(m_raw >= 1) || m_raw != std::floor(m_raw)) throw parse_error("m must be a positive integer");
    inst.n = static_cast<std::size_t>(n_raw);
    inst.m = static_cast<std::size_t>(m_raw);
    const double optimum = in.next("known optimum (0 = unknown)");
    if (optimum != 0.0) inst.known_optimum = optimum;

    inst.profits.reserve(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) inst.profits.push_back(in.next("profit"));
    inst.weights.reserve(inst.n * inst.m);
    for (std::size_t j = 0; j < inst.m; ++j)
        for (std::size_t i = 0; i < inst.n; ++i) inst.weights.push_back(in.next("weight"));
    inst.capacities.reserve(inst.m);
    for (std::size_t j = 0; j < inst.m; ++j) inst.capacities.push_back(in.next("capacity"));

    if (!in.exhausted())
        throw parse_error("token count mismatch: trailing data after token " +
                          std::to_string(in.token_index()));
    inst.validate();
    return inst;
}

MkpInstance load_mkp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_mkp(buf.str());
}

MkpState::MkpState(const MkpInstance& instance)
    : selected(instance.n, 0), remaining(instance.capacities) {}

void MkpState::add(const MkpInstance& instance, std::size_t item) {
    selected[item] = 1;
    ++selected_count;
    profit_accum += instance.profits[item];
    for (std::size_t j = 0; j < instance.m; ++j) remaining[j] -= instance.weight(j, item);
}

std::vector<std::size_t> feasible_items(const MkpInstance& instance, const MkpState& state) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < instance.n; ++i) {
        if (state.selected[i]) continue;
        bool fits = true;
        for (std::size_t j = 0; j < instance.m; ++j) {
            if (instance.weight(j, i) > state.remaining[j]) {
                fits = false;
                break;
            }
        }
        if (fits) out.push_back(i);
    }
    return out;
}

double normalized_profit(const MkpInstance& instance, std::size_t item) {
    return instance.profits[item] / instance.max_profit();
}

double capacity_impact(const MkpInstance& instance, const MkpState& state, std::size_t item) {
    double worst = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < instance.m; ++j) {
        const double w = instance.weight(j, item);
        if (w == 0.0) continue;  // zero weight costs nothing in this dimension
        const double ratio = w / state.remaining[j];
        worst = std::max(worst, ratio);
        total += ratio;
    }
    return worst + total / static_cast<double>(instance.m);
}

double dynamic_impact_mkp(const MkpInstance& instance, const MkpState& state, std::size_t item) {
    const double ci = capacity_impact(instance, state, item);
    if (ci == 0.0) return kWeightlessDiCeiling;
    return normalized_profit(instance, item) / ci;
}

double mkp_fitness(const MkpInstance& instance, const MkpState& state) {
    double total = 0.0;
    for (std::size_t i = 0; i < instance.n; ++i)
        if (state.selected[i]) total += instance.profits[i];
    return total;
}

namespace {

struct BruteForceSearch {
    const MkpInstance& inst;
    std::vector<double> remaining;
    std::vector<std::size_t> current;
    BruteForceResult best;

    explicit BruteForceSearch(const MkpInstance& instance)
        : inst(instance), remaining(instance.capacities) {}

    // Include-before-exclude depth-first order visits equal-profit sets in
    // lexicographic order, so strict improvement keeps the smallest one.
    void recurse(std::size_t item, double profit) {
        if (profit > best.profit) {
            best.profit = profit;
            best.items = current;
        }
        if (item == inst.n) return;
        bool fits = true;
        for (std::size_t j = 0; j < inst.m; ++j) {
            if (inst.weight(j, item) > remaining[j]) {
                fits = false;
                break;
            }
        }
        if (fits) {
            for (std::size_t j = 0; j < inst.m; ++j) remaining[j] -= inst.weight(j, item);
            current.push_back(item);
            recurse(item + 1, profit + inst.profits[item]);
            current.pop_back();
            for (std::size_t j = 0; j < inst.m; ++j) remaining[j] += inst.weight(j, item);
        }
        recurse(item + 1, profit);
    }
};

}  // namespace

BruteForceResult brute_force_optimum(const MkpInstance& instance) {
    if (instance.n > 24)
        throw std::invalid_argument("brute_force_optimum: refusing n > 24 (got n = " +
                                    std::to_string(instance.n) + ")");
    BruteForceSearch search(instance);
    search.recurse(0, 0.0);
    return std::move(search.best);
}

MkpCheck check_solution(const MkpInstance& instance, const std::vector<std::size_t>& items) {
    MkpCheck result;
    std::vector<char> seen(instance.n, 0);
    std::vector<double> used(instance.m, 0.0);
    for (std::size_t item : items) {
        if (item >= instance.n) {
            result.feasible = false;
            result.violation = "item id " + std::to_string(item) + " out of range";
            return result;
        }
        if (seen[item]) {
            result.feasible = false;
            result.violation = "item " + std::to_string(item) + " selected twice";
            return result;
        }
        seen[item] = 1;
        result.fitness += instance.profits[item];
        for (std::size_t j = 0; j < instance.m; ++j) used[j] += instance.weight(j, item);
    }
    for (std::size_t j = 0; j < instance.m; ++j) {
        if (used[j] > instance.capacities[j]) {
            result.feasible = false;
            result.violation = "constraint " + std::to_string(j) + " overloaded: " +
                               std::to_string(used[j]) + " > " +
                               std::to_string(instance.capacities[j]);
            return result;
        }
    }
    return result;
}

MkpAdapter::MkpAdapter(const MkpInstance& instance)
    : instance_(&instance), state_(instance) {
    instance.validate();
}

void MkpAdapter::reset() { state_ = MkpState(*instance_); }

void MkpAdapter::candidates(std::vector<CandidateView>& out) const {
    out.clear();
    for (std::size_t i = 0; i < instance_->n; ++i) {
        if (state_.selected[i]) continue;
        bool fits = true;
        for (std::size_t j = 0; j < instance_->m; ++j) {
            if (instance_->weight(j, i) > state_.remaining[j]) {
                fits = false;
                break;
            }
        }
        if (fits) out.push_back({i, 1.0, dynamic_impact_mkp(*instance_, state_, i)});
    }
}

void MkpAdapter::apply(std::size_t edge_id) {
    if (edge_id >= instance_->n) throw contract_violation("mkp apply: item id out of range");
    if (state_.selected[edge_id]) throw contract_violation("mkp apply: item already selected");
    for (std::size_t j = 0; j < instance_->m; ++j)
        if (instance_->weight(j, edge_id) > state_.remaining[j])
            throw contract_violation("mkp apply: item does not fit remaining capacity");
    state_.add(*instance_, edge_id);
}

}  // namespace aco::mkp
