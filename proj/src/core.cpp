#include "tspsd/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tspsd {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::invalid_trip: return "InvalidTrip";
    case ErrorCode::invalid_plan: return "InvalidPlan";
    case ErrorCode::range_violation: return "RangeViolation";
    case ErrorCode::invalid_baseline: return "InvalidBaseline";
    case ErrorCode::invalid_k: return "InvalidK";
    case ErrorCode::decode_error: return "DecodeError";
    case ErrorCode::infeasible_cluster: return "InfeasibleCluster";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::io: return "IOError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

double dist(Point2 a, Point2 b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double closed_tour_length(std::span<const Point2> stops) noexcept
{
    if (stops.size() <= 1) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
        total += dist(stops[i], stops[i + 1]);
    }
    return total + dist(stops.back(), stops.front());
}

Point2 centroid(std::span<const Point2> points)
{
    if (points.empty()) {
        throw Error(ErrorCode::invalid_input, "centroid of an empty point set");
    }
    Point2 g;
    for (const auto& p : points) {
        g.x += p.x;
        g.y += p.y;
    }
    const auto n = static_cast<double>(points.size());
    return {g.x / n, g.y / n};
}

const char* to_string(Mode mode) noexcept
{
    return mode == Mode::recharging ? "recharging" : "revisiting";
}

Mode parse_mode(const std::string& text)
{
    if (text == "recharging" || text == "recharge") {
        return Mode::recharging;
    }
    if (text == "revisiting" || text == "revisit") {
        return Mode::revisiting;
    }
    throw Error(ErrorCode::invalid_input, "unknown mode '" + text + "'");
}

namespace {

bool finite(Point2 p)
{
    return std::isfinite(p.x) && std::isfinite(p.y);
}

}  // namespace

void Instance::validate() const
{
    if (customers.empty()) {
        throw Error(ErrorCode::invalid_input, "instance has no customers");
    }
    if (!(truck_speed > 0.0) || !std::isfinite(truck_speed)) {
        throw Error(ErrorCode::invalid_input, "truck speed must be positive");
    }
    if (!(drone_speed > 0.0) || !std::isfinite(drone_speed)) {
        throw Error(ErrorCode::invalid_input, "drone speed must be positive");
    }
    if (!(range >= 0.0) || !std::isfinite(range)) {
        throw Error(ErrorCode::invalid_input, "drone range must be finite and >= 0");
    }
    for (const auto& p : customers) {
        if (!finite(p)) {
            throw Error(ErrorCode::invalid_input, "non-finite customer coordinate");
        }
    }
    for (const auto& p : drone_bases) {
        if (!finite(p)) {
            throw Error(ErrorCode::invalid_input, "non-finite drone coordinate");
        }
    }
    if (center && !finite(*center)) {
        throw Error(ErrorCode::invalid_input, "non-finite center coordinate");
    }
}

Point2 Instance::one_center() const
{
    return center ? *center : centroid(customers);
}

double loop_length(Point2 base, Point2 center, Point2 customer) noexcept
{
    return dist(base, center) + dist(center, customer) + dist(customer, base);
}

namespace {

void check_trip(const DroneTrip& trip, const Instance& inst)
{
    if (trip.visits.empty()) {
        throw Error(ErrorCode::invalid_trip, "trip has no visits");
    }
    if (trip.mode == Mode::recharging && trip.visits.size() != 1) {
        throw Error(ErrorCode::invalid_trip, "recharging trip must visit exactly one customer");
    }
    if (trip.drone >= inst.num_drones()) {
        throw Error(ErrorCode::invalid_trip, "drone index out of range");
    }
    for (std::size_t i = 0; i < trip.visits.size(); ++i) {
        if (trip.visits[i] >= inst.num_customers()) {
            throw Error(ErrorCode::invalid_trip, "customer index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (trip.visits[i] == trip.visits[j]) {
                throw Error(ErrorCode::invalid_trip, "trip visits a customer twice");
            }
        }
    }
}

}  // namespace

double trip_length(const DroneTrip& trip, const Instance& inst)
{
    check_trip(trip, inst);
    const Point2 base = inst.drone_bases[trip.drone];
    double total = dist(base, trip.center);
    for (std::size_t t = 0; t + 1 < trip.visits.size(); ++t) {
        total += 2.0 * dist(trip.center, inst.customers[trip.visits[t]]);
    }
    const Point2 last = inst.customers[trip.visits.back()];
    return total + dist(trip.center, last) + dist(last, base);
}

double last_leg(const DroneTrip& trip, const Instance& inst)
{
    check_trip(trip, inst);
    return dist(inst.customers[trip.visits.back()], inst.drone_bases[trip.drone]);
}

Evaluation evaluate(const Plan& plan, const Instance& inst, Deduction deduction)
{
    const std::size_t n = inst.num_customers();
    std::vector<int> covered(n, 0);

    for (std::size_t c : plan.truck_served) {
        if (c >= n) {
            throw Error(ErrorCode::invalid_plan, "truck-served customer index out of range");
        }
        ++covered[c];
    }
    std::vector<bool> visited_by_truck(n, false);
    for (const auto& stop : plan.truck_stops) {
        if (!stop.customer) {
            continue;
        }
        if (*stop.customer >= n || inst.customers[*stop.customer] != stop.location) {
            throw Error(ErrorCode::invalid_plan, "truck stop does not match its customer");
        }
        visited_by_truck[*stop.customer] = true;
    }
    for (std::size_t c : plan.truck_served) {
        if (!visited_by_truck[c]) {
            throw Error(ErrorCode::invalid_plan, "truck-served customer is not a truck stop");
        }
    }

    // drone -> stop it works at; trips grouped by drone keep their flight order
    std::map<std::size_t, std::size_t> drone_stop;
    std::map<std::size_t, std::vector<const DroneTrip*>> by_drone;
    for (const auto& trip : plan.drone_trips) {
        const double len = trip_length(trip, inst);
        if (len > inst.range + kLengthTol) {
            throw Error(ErrorCode::range_violation, "drone trip exceeds the range");
        }
        auto stop_it = std::find_if(plan.truck_stops.begin(), plan.truck_stops.end(),
                                    [&](const TruckStop& s) { return s.location == trip.center; });
        if (stop_it == plan.truck_stops.end()) {
            throw Error(ErrorCode::invalid_plan, "drone trip center is not a truck stop");
        }
        const auto stop = static_cast<std::size_t>(stop_it - plan.truck_stops.begin());
        auto [it, inserted] = drone_stop.emplace(trip.drone, stop);
        if (!inserted && it->second != stop) {
            throw Error(ErrorCode::invalid_plan, "drone works at more than one center");
        }
        by_drone[trip.drone].push_back(&trip);
        for (std::size_t c : trip.visits) {
            ++covered[c];
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (covered[c] != 1) {
            throw Error(ErrorCode::invalid_plan, "customer " + std::to_string(c) + " covered "
                                                     + std::to_string(covered[c]) + " times");
        }
    }

    Evaluation ev;
    std::vector<Point2> tour;
    tour.reserve(plan.truck_stops.size());
    for (const auto& stop : plan.truck_stops) {
        tour.push_back(stop.location);
    }
    ev.truck_time = closed_tour_length(tour) / inst.truck_speed;
    ev.cluster_times.assign(plan.truck_stops.size(), 0.0);

    for (const auto& [drone, trips] : by_drone) {
        double total = 0.0;
        for (const DroneTrip* t : trips) {
            total += trip_length(*t, inst);
        }
        if (deduction == Deduction::last_leg) {
            total -= last_leg(*trips.back(), inst);
        }
        double& q = ev.cluster_times[drone_stop.at(drone)];
        q = std::max(q, total / inst.drone_speed);
    }

    ev.objective = ev.truck_time;
    for (double q : ev.cluster_times) {
        ev.objective += q;
    }
    return ev;
}

void finalize(Plan& plan, const Instance& inst)
{
    auto ev = evaluate(plan, inst);
    plan.objective = ev.objective;
    plan.truck_time = ev.truck_time;
    plan.cluster_times = std::move(ev.cluster_times);
}

double savings(double cost_baseline, double cost_ours)
{
    if (!(cost_baseline > 0.0)) {
        throw Error(ErrorCode::invalid_baseline, "baseline cost must be positive");
    }
    return (cost_baseline - cost_ours) / cost_baseline;
}

void Params::validate() const
{
    if (!(rho1 > 0.0) || !(rho2 > 0.0) || !(epsilon > 0.0)) {
        throw Error(ErrorCode::invalid_input, "rho1, rho2 and epsilon must be positive");
    }
}

}  // namespace tspsd
