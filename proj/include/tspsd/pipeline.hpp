#pragma once

#include "tspsd/core.hpp"
#include "tspsd/drone_router.hpp"

#include <string>

namespace tspsd {

enum class Algorithm { original, alg1, alg2, alg3 };

const char* to_string(Algorithm algorithm) noexcept;
/// Accepts "original", "1".."3" and "alg1".."alg3".
Algorithm parse_algorithm(const std::string& text);

struct PipelineConfig {
    Algorithm algorithm = Algorithm::alg3;
    Mode mode = Mode::recharging;
    Params params;
    TabuParams tabu;
};

/// Binary search plus k-means clustering, Voronoi cells, tabu search per cell
/// and a truck tour over the cell centers (continuous points) and every
/// customer left to the truck.
Plan run_original(const Instance& inst, const PipelineConfig& config);

/// Moves each center onto its nearest customer. Customers the cell's drones
/// can no longer reach from there become truck stops.
Plan run_alg1(const Instance& inst, const PipelineConfig& config);

/// After the first relocation, moves each center to the customer closest to
/// the centroid of the truck stops that still keeps the cell servable.
Plan run_alg2(const Instance& inst, const PipelineConfig& config);

/// After both relocations, repeatedly merges each center into its nearest
/// neighbour when the pooled drones can serve every pooled customer from the
/// surviving center.
Plan run_alg3(const Instance& inst, const PipelineConfig& config);

/// Runs whichever algorithm `config` names.
Plan run(const Instance& inst, const PipelineConfig& config);

/// Runs both modes and keeps the cheaper plan; recharging wins ties.
Plan compare_modes(const Instance& inst, const PipelineConfig& config);

}  // namespace tspsd
