#include "doctest.h"

#include <stdexcept>

#include "aco/engine.hpp"
#include "aco/pheromone.hpp"
#include "aco/rng.hpp"

using namespace aco;

namespace {

SolverConfig base_config() {
    SolverConfig c;
    c.tau_max = 1.0;
    c.tau_min = 0.001;
    c.rho = 0.1;
    return c;
}

}  // namespace

TEST_CASE("init sets every trail entry to tau_max") {
    auto cfg = base_config();
    auto store = init_pheromone(3, cfg);
    REQUIRE(store.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(store[i] == 1.0);

    cfg.tau_max = 0.5;
    cfg.tau_min = 0.001;
    auto single = init_pheromone(1, cfg);
    CHECK(single[0] == 0.5);

    cfg.tau_max = 2.0;
    cfg.tau_min = 0.1;
    auto two = init_pheromone(2, cfg);
    CHECK(two[0] == 2.0);
    CHECK(two[1] == 2.0);
    CHECK(two[0] <= cfg.tau_max);
    CHECK(two[0] >= cfg.tau_min);
}

TEST_CASE("init rejects an empty search space") {
    CHECK_THROWS_AS(init_pheromone(0, base_config()), std::invalid_argument);
}

TEST_CASE("evaporation multiplies by (1 - rho) and clamps at tau_min") {
    auto cfg = base_config();
    auto store = init_pheromone(1, cfg);
    store.evaporate(0.1);
    CHECK(store[0] == doctest::Approx(0.9).epsilon(1e-12));

    for (int i = 0; i < 200; ++i) store.evaporate(0.1);
    CHECK(store[0] == cfg.tau_min);  // floor clamp holds exactly
    store.evaporate(0.1);
    CHECK(store[0] == cfg.tau_min);
}

TEST_CASE("config invariants exclude the rho boundaries") {
    auto cfg = base_config();
    cfg.rho = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.rho = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.rho = 0.5;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("deposit adds rho on visited edges and clamps at tau_max") {
    auto cfg = base_config();
    auto store = init_pheromone(2, cfg);
    store.evaporate(0.1);  // both at 0.9
    const std::size_t visited[] = {0};
    store.deposit(visited, 0.1);
    CHECK(store[0] == 1.0);  // 0.9 + 0.1, ceiling clamp exact
    CHECK(store[1] == doctest::Approx(0.9).epsilon(1e-12));

    store.deposit(visited, 0.1);  // already at tau_max
    CHECK(store[0] == 1.0);

    store.deposit({}, 0.1);  // empty solution changes nothing
    CHECK(store[0] == 1.0);
    CHECK(store[1] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("deposit rejects invalid edge ids") {
    auto store = init_pheromone(2, base_config());
    const std::size_t bad[] = {7};
    CHECK_THROWS_AS(store.deposit(bad, 0.1), std::out_of_range);
}

TEST_CASE("bounds hold after any update sequence") {
    auto cfg = base_config();
    cfg.tau_max = 1.5;
    cfg.tau_min = 0.01;
    RngStream rng(7);
    auto store = init_pheromone(16, cfg);
    for (int step = 0; step < 1000; ++step) {
        if (rng.next_double() < 0.5) {
            store.evaporate(cfg.rho);
        } else {
            std::vector<std::size_t> visited;
            for (std::size_t e = 0; e < store.size(); ++e)
                if (rng.next_double() < 0.3) visited.push_back(e);
            store.deposit(visited, cfg.rho);
        }
        for (std::size_t e = 0; e < store.size(); ++e) {
            REQUIRE(store[e] >= cfg.tau_min);
            REQUIRE(store[e] <= cfg.tau_max);
        }
    }
}
