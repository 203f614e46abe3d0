#pragma once

#include "tspsd/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tspsd {

struct Tour {
    std::vector<std::size_t> order;  // permutation of point indices
    double length = 0.0;             // closed length, 2*d for two points
};

double tour_length(std::span<const Point2> points, std::span<const std::size_t> order) noexcept;

inline constexpr std::size_t kTourRestarts = 5;

/// LK-style local search: nearest-neighbour construction followed by 2-opt
/// and Or-opt (segments of 1..3, both orientations) until neither improves.
/// The first restart starts at point 0, the rest at seeded random points; the
/// shortest tour wins, earlier restart on ties. The winner then takes
/// max(30, 2n) double-bridge kicks, each followed by the same local search,
/// and is replaced whenever a kicked tour is strictly shorter.
Tour lk_tour(std::span<const Point2> points, std::uint64_t seed,
             std::size_t restarts = kTourRestarts);

inline constexpr std::size_t kExactTourLimit = 10;

/// Optimal tour by enumerating permutations with point 0 fixed and one
/// orientation per cycle. Throws too_large above kExactTourLimit points.
Tour exact_tour(std::span<const Point2> points);

/// True when no 2-opt exchange shortens the tour by more than `tol`.
bool is_two_opt_optimal(std::span<const Point2> points, const Tour& tour, double tol = 1e-9);

}  // namespace tspsd
