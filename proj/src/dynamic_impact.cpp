#include "aco/dynamic_impact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aco::di {

double general_dynamic_impact(const GeneralDiInput& input) {
    if (!(input.omega_without > 0.0))
        throw std::invalid_argument("general_dynamic_impact: omega_without must be > 0");
    if (input.omega_with > input.omega_without)
        throw std::invalid_argument("general_dynamic_impact: omega cannot grow when an edge is added");
    const double consumed_fraction =
        (input.omega_without - input.omega_with) / input.omega_without;
    if (!(consumed_fraction > 0.0))
        throw zero_consumption_error("edge consumes no constraint resource");
    const double sign = input.sense == Sense::maximize ? 1.0 : -1.0;
    return (input.fitness_with - input.fitness_without) * sign / consumed_fraction;
}

double route_dynamic_impact(const RouteOption& route, double remaining_fuel) {
    if (!(remaining_fuel > 0.0))
        throw std::domain_error("route_dynamic_impact: remaining_fuel must be > 0");
    if (!(route.time > 0.0))
        throw std::domain_error("route_dynamic_impact: route time must be > 0");
    return (remaining_fuel - route.fuel_consumption) / (remaining_fuel * route.time);
}

std::vector<std::size_t> rank_routes_by_impact(const std::vector<RouteOption>& routes,
                                               double remaining_fuel) {
    if (routes.empty()) throw std::invalid_argument("rank_routes_by_impact: no routes");
    std::vector<std::size_t> order(routes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return route_dynamic_impact(routes[a], remaining_fuel) >
               route_dynamic_impact(routes[b], remaining_fuel);
    });
    return order;
}

std::vector<RouteOption> example_routes() {
    return {
        {25.0, 10.0, 2.5, 15.0},
        {30.0, 15.0, 2.0, 25.0},
        {60.0, 60.0, 1.0, 60.0},
    };
}

std::vector<double> example_fuel_levels() { return {60.0, 80.0, 120.0}; }

}  // namespace aco::di
