#include "tspsd/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tspsd {

using nlohmann::json;

namespace {

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_input, std::string("bad JSON: ") + e.what());
    }
}

Point2 point(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::invalid_input, "a point must be [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json point(Point2 p)
{
    return json::array({p.x, p.y});
}

std::vector<Point2> points(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array()) {
        throw Error(ErrorCode::invalid_input, std::string("'") + key + "' must be a list of points");
    }
    std::vector<Point2> out;
    for (const auto& p : j[key]) {
        out.push_back(point(p));
    }
    return out;
}

double number(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number()) {
        throw Error(ErrorCode::invalid_input, std::string("'") + key + "' must be a number");
    }
    return j[key].get<double>();
}

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j[key].get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::invalid_input, std::string("'") + key + "' has the wrong type");
    }
}

}  // namespace

Instance instance_from_json(const std::string& text)
{
    const json j = parse(text);
    if (!j.is_object()) {
        throw Error(ErrorCode::invalid_input, "instance must be a JSON object");
    }
    Instance inst;
    inst.customers = points(j, "customers");
    inst.drone_bases = j.contains("drones") ? points(j, "drones") : std::vector<Point2>{};
    inst.truck_speed = number(j, "v_t");
    inst.drone_speed = number(j, "v_d");
    inst.range = number(j, "L");
    if (j.contains("center") && !j["center"].is_null()) {
        inst.center = point(j["center"]);
    }
    inst.validate();
    return inst;
}

std::string instance_to_json(const Instance& inst)
{
    json j;
    j["customers"] = json::array();
    for (auto p : inst.customers) {
        j["customers"].push_back(point(p));
    }
    j["drones"] = json::array();
    for (auto p : inst.drone_bases) {
        j["drones"].push_back(point(p));
    }
    j["v_t"] = inst.truck_speed;
    j["v_d"] = inst.drone_speed;
    j["L"] = inst.range;
    if (inst.center) {
        j["center"] = point(*inst.center);
    }
    return j.dump(2) + "\n";
}

std::string load_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot read " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw Error(ErrorCode::io, "cannot write " + path.string());
    }
}

Instance load_instance(const std::filesystem::path& path)
{
    return instance_from_json(load_text(path));
}

std::string plan_to_json(const Plan& plan)
{
    json j;
    j["objective"] = plan.objective;
    j["truck_time"] = plan.truck_time;
    j["truck_stops"] = json::array();
    for (const auto& s : plan.truck_stops) {
        json stop;
        stop["location"] = point(s.location);
        stop["customer"] = s.customer ? json(*s.customer) : json(nullptr);
        j["truck_stops"].push_back(stop);
    }
    j["truck_served"] = plan.truck_served;
    j["drone_trips"] = json::array();
    for (const auto& t : plan.drone_trips) {
        json trip;
        trip["drone"] = t.drone;
        trip["center"] = point(t.center);
        trip["visits"] = t.visits;
        trip["mode"] = to_string(t.mode);
        j["drone_trips"].push_back(trip);
    }
    j["cluster_times"] = plan.cluster_times;
    j["initial_centers"] = json::array();
    for (auto p : plan.initial_centers) {
        j["initial_centers"].push_back(point(p));
    }
    return j.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text)
{
    const json j = parse(text);
    Plan plan;
    try {
        plan.objective = j.at("objective").get<double>();
        plan.truck_time = j.at("truck_time").get<double>();
        for (const auto& s : j.at("truck_stops")) {
            TruckStop stop{point(s.at("location")), std::nullopt};
            if (!s.at("customer").is_null()) {
                stop.customer = s.at("customer").get<std::size_t>();
            }
            plan.truck_stops.push_back(stop);
        }
        plan.truck_served = j.at("truck_served").get<std::vector<std::size_t>>();
        for (const auto& t : j.at("drone_trips")) {
            DroneTrip trip;
            trip.drone = t.at("drone").get<std::size_t>();
            trip.center = point(t.at("center"));
            trip.visits = t.at("visits").get<std::vector<std::size_t>>();
            trip.mode = parse_mode(t.at("mode").get<std::string>());
            plan.drone_trips.push_back(trip);
        }
        plan.cluster_times = j.at("cluster_times").get<std::vector<double>>();
        for (const auto& p : j.at("initial_centers")) {
            plan.initial_centers.push_back(point(p));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_input, std::string("bad plan JSON: ") + e.what());
    }
    return plan;
}

GenSpec genspec_from_json(const std::string& text)
{
    const json j = parse(text);
    if (!j.is_object()) {
        throw Error(ErrorCode::invalid_input, "generator spec must be a JSON object");
    }
    GenSpec s;
    s.n_customers = get_or<std::size_t>(j, "n_customers", s.n_customers);
    s.n_drones = get_or<std::size_t>(j, "n_drones", s.n_drones);
    s.distribution = parse_distribution(get_or<std::string>(j, "distribution", to_string(s.distribution)));
    s.sigma2 = get_or<double>(j, "sigma2", s.sigma2);
    if (j.contains("mean")) {
        s.mean = point(j["mean"]);
    }
    s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
    s.truck_speed = get_or<double>(j, "v_t", s.truck_speed);
    s.drone_speed = get_or<double>(j, "v_d", s.drone_speed);
    s.range = get_or<double>(j, "L", s.range);
    return s;
}

}  // namespace tspsd
