#pragma once

#include "tspsd/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tspsd {

/// One pickup center together with the customers and drones it works with.
/// Indices refer to the instance.
struct Cluster {
    Point2 center;
    std::vector<std::size_t> customers;
    std::vector<std::size_t> drones;
};

/// Token list for one cluster. Labels: 1 is the center, 2..|C|+1 are the
/// cluster's customers and |C|+2..|C|+|D|+1 its drones, in cluster order.
/// A trip is written `drone 1 customer`; in revisiting mode further
/// `1 customer` pairs chain more visits onto the same trip.
struct EncodedSolution {
    std::vector<int> tokens;
    Mode mode = Mode::recharging;

    friend bool operator==(const EncodedSolution&, const EncodedSolution&) = default;
};

int center_label() noexcept;
int customer_label(const Cluster& cluster, std::size_t local) noexcept;
int drone_label(const Cluster& cluster, std::size_t local) noexcept;

/// Throws decode_error on a malformed stream or one that does not cover
/// every cluster customer exactly once.
std::vector<DroneTrip> decode(const EncodedSolution& sol, const Cluster& cluster);
EncodedSolution encode(std::span<const DroneTrip> trips, const Cluster& cluster, Mode mode);

/// Makespan of one center: max over drones of (sum of trip lengths minus the
/// last leg of that drone's final trip) / v_D. Trips keep their flight order
/// per drone. Throws range_violation when a trip exceeds L.
double cluster_cost(std::span<const DroneTrip> trips, const Instance& inst);

struct TabuParams {
    std::size_t iterations = 1000;
    double tabu_ratio = 0.7;
};

/// |C|(|C|-1)/2 customer swaps plus one drone change per cluster drone.
std::size_t action_list_size(const Cluster& cluster) noexcept;
std::size_t tabu_list_size(const Cluster& cluster, const TabuParams& params) noexcept;

struct TabuResult {
    EncodedSolution solution;
    std::vector<DroneTrip> trips;
    double cost = 0.0;
    std::vector<double> best_trace;  // best cost after each iteration
};

/// Tabu search over the list encoding of one cluster.
///
/// Starts by giving each customer to its nearest drone that can reach it.
/// Every iteration scores each action and takes the best admissible one. An
/// action is admissible when its counter is zero, or when it would beat the
/// best cost found so far. The counter of the taken action is set to the tabu
/// list size and every other positive counter drops by one. Neighbours that
/// break the range are rejected. In revisiting mode each drone's customer
/// sequence is split into consecutive trips so the total flight is minimal.
///
/// Throws infeasible_cluster if some customer is out of reach of every
/// cluster drone.
TabuResult tabu_search(const Instance& inst, const Cluster& cluster, Mode mode,
                       const TabuParams& params, std::uint64_t seed);

inline constexpr std::size_t kDefaultMaxVisits = 3;

/// Every trip of `drone` through `center` that visits at most `max_visits`
/// distinct customers of `customers`, in every order, with length <= L.
/// Recharging mode forces single visits.
std::vector<DroneTrip> enumerate_routes(const Instance& inst, std::span<const std::size_t> customers,
                                        Point2 center, std::size_t drone, Mode mode,
                                        std::size_t max_visits = kDefaultMaxVisits);

}  // namespace tspsd
