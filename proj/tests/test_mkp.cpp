#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "aco/engine.hpp"
#include "aco/mkp.hpp"
#include "aco/rng.hpp"

using namespace aco;
using namespace aco::mkp;

namespace {

const char* kToyText = "3 1 11  6 5 4  2 2 3  4";

std::string data_path(const char* name) { return std::string(ACO_DATA_DIR "/mkp/") + name; }

// Integer instances with profits correlated to weight sums, the usual
// benchmark construction.
MkpInstance random_instance(RngStream& rng, std::size_t n, std::size_t m) {
    MkpInstance inst;
    inst.n = n;
    inst.m = m;
    inst.weights.resize(n * m);
    for (auto& w : inst.weights) w = std::floor(rng.uniform(0, 31));
    for (std::size_t i = 0; i < n; ++i) {
        double wsum = 0;
        for (std::size_t j = 0; j < m; ++j) wsum += inst.weight(j, i);
        inst.profits.push_back(std::max(1.0, std::floor(wsum / static_cast<double>(m) +
                                                        rng.uniform(0, 10))));
    }
    for (std::size_t j = 0; j < m; ++j) {
        double row = 0;
        for (std::size_t i = 0; i < n; ++i) row += inst.weight(j, i);
        inst.capacities.push_back(std::max(1.0, std::floor(row * rng.uniform(0.3, 0.7))));
    }
    return inst;
}

}  // namespace

TEST_CASE("parser reads the whitespace format") {
    const auto toy = parse_mkp(kToyText);
    CHECK(toy.n == 3);
    CHECK(toy.m == 1);
    REQUIRE(toy.known_optimum.has_value());
    CHECK(*toy.known_optimum == 11.0);
    CHECK(toy.profits == std::vector<double>{6, 5, 4});
    CHECK(toy.weights == std::vector<double>{2, 2, 3});
    CHECK(toy.capacities == std::vector<double>{4});

    const auto minimal = parse_mkp("1 1 0  5  1  10");
    CHECK(minimal.n == 1);
    CHECK_FALSE(minimal.known_optimum.has_value());

    const auto weing1 = load_mkp(data_path("weing1.dat"));
    CHECK(weing1.n == 28);
    CHECK(weing1.m == 2);
    CHECK(*weing1.known_optimum == 141278.0);
}

TEST_CASE("parser reports position and validation errors") {
    CHECK_THROWS_WITH_AS(parse_mkp("3 1 11  6 5"), doctest::Contains("token"), parse_error);
    // n=1, m=1, all tokens present but capacity negative
    CHECK_THROWS_WITH_AS(parse_mkp("1 1 0  5  1  -10"), doctest::Contains("capacity"), parse_error);
    // trailing tokens are a count mismatch, not silently ignored
    CHECK_THROWS_WITH_AS(parse_mkp("1 1 0  5  1  10  99"), doctest::Contains("trailing"),
                         parse_error);
    CHECK_THROWS_AS(parse_mkp("1 1 0  5  abc  10"), parse_error);
}

TEST_CASE("feasible items respect every remaining capacity") {
    const auto toy = parse_mkp(kToyText);
    MkpState state(toy);
    CHECK(feasible_items(toy, state) == std::vector<std::size_t>{0, 1, 2});

    state.add(toy, 0);  // remaining capacity 2
    CHECK(feasible_items(toy, state) == std::vector<std::size_t>{1});

    state.add(toy, 1);  // remaining capacity 0
    CHECK(feasible_items(toy, state).empty());
}

TEST_CASE("normalized profit divides by the instance maximum") {
    const auto toy = parse_mkp(kToyText);
    CHECK(normalized_profit(toy, 0) == 1.0);
    CHECK(normalized_profit(toy, 2) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));

    const auto equal = parse_mkp("3 1 0  7 7 7  1 1 1  2");
    for (std::size_t i = 0; i < 3; ++i) CHECK(normalized_profit(equal, i) == 1.0);

    SUBCASE("scaling all profits leaves normalized profit unchanged") {
        RngStream rng(31);
        for (int t = 0; t < 200; ++t) {
            auto inst = random_instance(rng, 8, 3);
            auto scaled = inst;
            const double c = rng.uniform(0.001, 1000);
            for (auto& p : scaled.profits) p *= c;
            for (std::size_t i = 0; i < inst.n; ++i)
                REQUIRE(normalized_profit(scaled, i) ==
                        doctest::Approx(normalized_profit(inst, i)).epsilon(1e-12));
        }
    }
}

TEST_CASE("capacity impact combines worst and mean utilization ratios") {
    // two dimensions: ratios 0.2 and 0.5 -> max 0.5 plus mean 0.35
    MkpInstance inst;
    inst.n = 1;
    inst.m = 2;
    inst.profits = {10};
    inst.weights = {2, 4};
    inst.capacities = {10, 8};
    MkpState state(inst);
    CHECK(capacity_impact(inst, state, 0) == doctest::Approx(0.85).epsilon(1e-12));

    MkpInstance weightless;
    weightless.n = 1;
    weightless.m = 2;
    weightless.profits = {10};
    weightless.weights = {0, 0};
    weightless.capacities = {10, 8};
    MkpState wstate(weightless);
    CHECK(capacity_impact(weightless, wstate, 0) == 0.0);

    MkpInstance single = parse_mkp("1 1 0  10  5  5");
    MkpState sstate(single);
    CHECK(capacity_impact(single, sstate, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("capacity impact never decreases along a construction path") {
    RngStream rng(47);
    for (int t = 0; t < 100; ++t) {
        auto inst = random_instance(rng, 10, 4);
        MkpState state(inst);
        // follow a random feasible path, tracking CI of every still-feasible item
        for (;;) {
            auto feas = feasible_items(inst, state);
            if (feas.empty()) break;
            std::vector<double> before(inst.n, -1.0);
            for (auto i : feas) before[i] = capacity_impact(inst, state, i);
            state.add(inst, feas[rng.next_below(feas.size())]);
            for (auto i : feasible_items(inst, state)) {
                if (before[i] < 0) continue;
                REQUIRE(capacity_impact(inst, state, i) >= before[i] - 1e-12);
            }
        }
    }
}

TEST_CASE("dynamic impact is normalized profit over capacity impact") {
    // NP = 0.5 against CI = 0.85
    MkpInstance inst;
    inst.n = 2;
    inst.m = 2;
    inst.profits = {10, 20};  // item 0 has NP 0.5
    inst.weights = {2, 0, 4, 0};
    inst.capacities = {10, 8};
    MkpState state(inst);
    CHECK(capacity_impact(inst, state, 0) == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(dynamic_impact_mkp(inst, state, 0) == doctest::Approx(0.5 / 0.85).epsilon(1e-9));

    SUBCASE("equal profits: twice the capacity impact means half the impact") {
        MkpInstance two;
        two.n = 2;
        two.m = 1;
        two.profits = {10, 10};
        two.weights = {2, 4};
        two.capacities = {10};
        MkpState st(two);
        CHECK(dynamic_impact_mkp(two, st, 0) ==
              doctest::Approx(2 * dynamic_impact_mkp(two, st, 1)).epsilon(1e-12));
    }

    SUBCASE("weightless items take the ceiling and outrank everything") {
        MkpInstance mix;
        mix.n = 2;
        mix.m = 1;
        mix.profits = {1, 100};
        mix.weights = {0, 5};
        mix.capacities = {10};
        MkpState st(mix);
        CHECK(dynamic_impact_mkp(mix, st, 0) == kWeightlessDiCeiling);
        CHECK(dynamic_impact_mkp(mix, st, 0) > dynamic_impact_mkp(mix, st, 1));
    }
}

TEST_CASE("fitness sums selected profits") {
    const auto toy = parse_mkp(kToyText);
    MkpState state(toy);
    CHECK(mkp_fitness(toy, state) == 0.0);
    state.add(toy, 0);
    state.add(toy, 1);
    CHECK(mkp_fitness(toy, state) == 11.0);
    CHECK(state.profit_accum == 11.0);
}

TEST_CASE("brute force enumerates the exact optimum") {
    const auto toy = parse_mkp(kToyText);
    auto best = brute_force_optimum(toy);
    CHECK(best.profit == 11.0);
    CHECK(best.items == std::vector<std::size_t>{0, 1});

    const auto infeasible = parse_mkp("1 1 0  5  9  4");
    auto none = brute_force_optimum(infeasible);
    CHECK(none.profit == 0.0);
    CHECK(none.items.empty());

    const auto pet1 = load_mkp(data_path("pet1.dat"));
    CHECK(brute_force_optimum(pet1).profit == 3800.0);  // documented optimum

    SUBCASE("profit ties resolve to the lexicographically smallest set") {
        const auto tie = parse_mkp("2 1 0  5 5  1 1  1");
        auto result = brute_force_optimum(tie);
        CHECK(result.profit == 5.0);
        CHECK(result.items == std::vector<std::size_t>{0});
    }

    SUBCASE("refuses instances beyond the enumeration guard") {
        const auto weing1 = load_mkp(data_path("weing1.dat"));  // n = 28
        CHECK_THROWS_AS(brute_force_optimum(weing1), std::invalid_argument);
    }
}

TEST_CASE("adapter solutions stay feasible and drift-free") {
    RngStream rng(53);
    for (int t = 0; t < 30; ++t) {
        auto inst = random_instance(rng, 12, 3);
        SolverConfig cfg;
        cfg.gamma = 4;
        cfg.q0 = 0.1;
        cfg.iterations = 10;
        cfg.parallel_ants = 2;
        cfg.sequential_ants = 2;
        cfg.seed = t;
        auto result = run([&] { return std::make_unique<MkpAdapter>(inst); }, cfg);
        REQUIRE(result.found);

        auto check = check_solution(inst, result.best_solution);
        REQUIRE(check.feasible);
        REQUIRE(check.fitness == doctest::Approx(result.best_fitness).epsilon(1e-9));
    }
}

TEST_CASE("solver never beats brute force and matches it with impact enabled") {
    RngStream rng(61);
    int solved_exactly = 0;
    for (int t = 0; t < 10; ++t) {
        auto inst = random_instance(rng, 12, 3);
        const auto exact = brute_force_optimum(inst);
        SolverConfig cfg;
        cfg.gamma = 8;
        cfg.q0 = 0.01;
        cfg.iterations = 300;
        cfg.parallel_ants = 8;
        cfg.sequential_ants = 2;
        cfg.target_fitness = exact.profit;
        cfg.stop_on_target = true;
        double best = 0;
        for (int s = 0; s < 10 && best != exact.profit; ++s) {
            cfg.seed = 100 + s;
            auto result = run([&] { return std::make_unique<MkpAdapter>(inst); }, cfg);
            REQUIRE(result.best_fitness <= exact.profit);  // integer data, exact compare
            best = std::max(best, result.best_fitness);
        }
        if (best == exact.profit) ++solved_exactly;
    }
    CHECK(solved_exactly >= 9);
}
