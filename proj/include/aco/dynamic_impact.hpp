#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "aco/config.hpp"

namespace aco::di {

/// Thrown when the chosen edge consumes none of the constraint resource, in
/// which case the ratio is undefined. Callers substitute a configured floor
/// with maximal preference.
class zero_consumption_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inputs for the general dynamic-impact formula: fitness with and without
/// the candidate edge, remaining constraint resource with and without it,
/// and the optimization sense.
struct GeneralDiInput {
    double fitness_without = 0.0;
    double fitness_with = 0.0;
    double omega_without = 1.0;  // must be > 0
    double omega_with = 1.0;     // must be <= omega_without
    Sense sense = Sense::maximize;
};

/// Fitness delta (signed by sense) divided by the fraction of remaining
/// resource the edge consumes. May be <= 0; adapters that feed the result
/// into probability calculations must apply a positive floor.
double general_dynamic_impact(const GeneralDiInput& input);

struct RouteOption {
    double distance = 0.0;
    double speed = 0.0;
    double time = 0.0;  // == distance / speed
    double fuel_consumption = 0.0;
};

/// (remaining_fuel - fuel_consumption) / (remaining_fuel * time). The raw
/// value is reported, including zero for a route that drains the tank.
double route_dynamic_impact(const RouteOption& route, double remaining_fuel);

/// Route indices in descending dynamic-impact order (stable).
std::vector<std::size_t> rank_routes_by_impact(const std::vector<RouteOption>& routes,
                                               double remaining_fuel);

/// The built-in three-route example: a slow fuel-efficient route, a middling
/// one, and a fast gas-guzzler.
std::vector<RouteOption> example_routes();

/// The three remaining-fuel scenarios the example is evaluated at.
std::vector<double> example_fuel_levels();

}  // namespace aco::di
