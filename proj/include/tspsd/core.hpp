#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tspsd {

enum class ErrorCode {
    invalid_input,
    invalid_trip,
    invalid_plan,
    range_violation,
    invalid_baseline,
    invalid_k,
    decode_error,
    infeasible_cluster,
    too_large,
    io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Absolute tolerance on lengths for every range/feasibility check.
inline constexpr double kLengthTol = 1e-9;
/// Tolerance used when comparing objective values of competing solutions.
inline constexpr double kObjectiveEps = 1e-5;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

double dist(Point2 a, Point2 b) noexcept;

/// Closed tour length through `stops` in the given order. One stop costs 0,
/// two stops cost the out-and-back 2*d.
double closed_tour_length(std::span<const Point2> stops) noexcept;

Point2 centroid(std::span<const Point2> points);

enum class Mode { recharging, revisiting };

const char* to_string(Mode mode) noexcept;
Mode parse_mode(const std::string& text);

struct Instance {
    std::vector<Point2> customers;
    std::vector<Point2> drone_bases;
    double truck_speed = 1.0;
    double drone_speed = 1.0;
    double range = 0.0;
    /// Pickup point for the one-center problems; unused by the multi-center code.
    std::optional<Point2> center;

    /// Throws Error(invalid_input) when the instance breaks its invariants.
    void validate() const;

    std::size_t num_customers() const noexcept { return customers.size(); }
    std::size_t num_drones() const noexcept { return drone_bases.size(); }
    Point2 one_center() const;
};

/// One departure of a drone from its base: base -> center -> visits... -> base.
/// In revisiting mode the drone returns to the center between visits.
struct DroneTrip {
    std::size_t drone = 0;
    Point2 center;
    std::vector<std::size_t> visits;
    Mode mode = Mode::recharging;

    friend bool operator==(const DroneTrip&, const DroneTrip&) = default;
};

double trip_length(const DroneTrip& trip, const Instance& inst);
double last_leg(const DroneTrip& trip, const Instance& inst);

/// base -> center -> customer -> base, the loop every feasibility test uses.
double loop_length(Point2 base, Point2 center, Point2 customer) noexcept;

struct TruckStop {
    Point2 location;
    /// Set when the stop is a customer location; that customer is truck-served.
    std::optional<std::size_t> customer;

    friend bool operator==(const TruckStop&, const TruckStop&) = default;
};

struct Plan {
    std::vector<TruckStop> truck_stops;      // tour order
    std::vector<std::size_t> truck_served;   // sorted customer indices
    std::vector<DroneTrip> drone_trips;      // per drone in flight order
    double objective = 0.0;
    double truck_time = 0.0;
    std::vector<double> cluster_times;       // Q_p per truck stop
    std::vector<Point2> initial_centers;     // clustering output, for inspection
};

enum class Deduction { last_leg, none };

struct Evaluation {
    double objective = 0.0;
    double truck_time = 0.0;
    std::vector<double> cluster_times;
};

/// Checks the plan against the instance and recomputes its objective.
///
/// truck_time is the tour over truck_stops divided by v_T. For stop p,
/// Q_p = max over drones working at p of (sum of trip lengths minus the last
/// leg of the drone's final trip) / v_D; the deduction is skipped with
/// Deduction::none. Throws invalid_plan on a broken cover or unknown center,
/// invalid_trip on malformed trips and range_violation when a trip exceeds L.
Evaluation evaluate(const Plan& plan, const Instance& inst, Deduction deduction = Deduction::last_leg);

/// Fills objective, truck_time and cluster_times from evaluate().
void finalize(Plan& plan, const Instance& inst);

/// (baseline - ours) / baseline. Throws invalid_baseline when baseline <= 0.
double savings(double cost_baseline, double cost_ours);

struct Params {
    double rho1 = 2.0;
    double rho2 = 1.0;
    double epsilon = kObjectiveEps;
    std::uint64_t seed = 0;

    void validate() const;
};

}  // namespace tspsd
