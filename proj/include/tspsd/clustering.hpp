#pragma once

#include "tspsd/core.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace tspsd {

inline constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

struct Clustering {
    std::size_t k = 0;
    std::vector<Point2> centers;
    std::vector<std::size_t> customer_assignment;  // center index or kUnassigned
    std::vector<std::size_t> drone_assignment;     // center index or kUnassigned
};

/// Index of the nearest center; ties go to the lowest index.
std::size_t nearest_center(Point2 p, std::span<const Point2> centers) noexcept;

/// Sum of squared distances from each point to its nearest center.
double kmeans_cost(std::span<const Point2> points, std::span<const Point2> centers) noexcept;

/// Largest distance from a point to its nearest center.
double covering_radius(std::span<const Point2> points, std::span<const Point2> centers) noexcept;

/// Lloyd's algorithm with k-means++ seeding drawn from `seed`. Stops once no
/// center moves by `tol` or more, or after `max_iter` rounds. An empty cluster
/// is reseeded at the point farthest from its nearest center. When `trace` is
/// given it receives the k-means cost after every round.
std::vector<Point2> lloyd(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                          std::size_t max_iter = 300, double tol = 1e-12,
                          std::vector<double>* trace = nullptr);

inline constexpr std::size_t kClusteringRestarts = 10;

/// Smallest k (binary search over [1, |C|]) for which some Lloyd restart puts
/// every customer within L/4 of its nearest center. Returns the cheapest
/// feasible restart at that k, assigned with voronoi_assign.
Clustering min_feasible_k(const Instance& inst, std::uint64_t seed,
                          std::size_t restarts = kClusteringRestarts);

/// Nearest-center assignment of customers and drone bases. A node is assigned
/// only when that distance is strictly below L/4.
Clustering voronoi_assign(const Instance& inst, std::span<const Point2> centers);

}  // namespace tspsd
