#include "tspsd/drone_router.hpp"

#include "tspsd/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tspsd {

int center_label() noexcept
{
    return 1;
}

int customer_label(const Cluster&, std::size_t local) noexcept
{
    return static_cast<int>(local) + 2;
}

int drone_label(const Cluster& cluster, std::size_t local) noexcept
{
    return static_cast<int>(cluster.customers.size() + local) + 2;
}

std::vector<DroneTrip> decode(const EncodedSolution& sol, const Cluster& cluster)
{
    const auto nc = static_cast<int>(cluster.customers.size());
    const auto nd = static_cast<int>(cluster.drones.size());
    const auto& tok = sol.tokens;
    auto is_customer = [&](int t) { return t >= 2 && t < nc + 2; };
    auto is_drone = [&](int t) { return t >= nc + 2 && t < nc + nd + 2; };
    auto fail = [](const char* why) { throw Error(ErrorCode::decode_error, why); };

    std::vector<DroneTrip> trips;
    std::vector<bool> seen(cluster.customers.size(), false);
    auto take_customer = [&](int t) {
        const auto local = static_cast<std::size_t>(t - 2);
        if (seen[local]) {
            fail("customer appears twice");
        }
        seen[local] = true;
        trips.back().visits.push_back(cluster.customers[local]);
    };

    std::size_t i = 0;
    while (i < tok.size()) {
        if (!is_drone(tok[i])) {
            fail("trip must start with a drone label");
        }
        if (i + 2 >= tok.size() || tok[i + 1] != center_label() || !is_customer(tok[i + 2])) {
            fail("expected center then customer after a drone label");
        }
        DroneTrip trip;
        trip.drone = cluster.drones[static_cast<std::size_t>(tok[i] - nc - 2)];
        trip.center = cluster.center;
        trip.mode = sol.mode;
        trips.push_back(std::move(trip));
        take_customer(tok[i + 2]);
        i += 3;
        while (sol.mode == Mode::revisiting && i < tok.size() && tok[i] == center_label()) {
            if (i + 1 >= tok.size() || !is_customer(tok[i + 1])) {
                fail("center label must be followed by a customer");
            }
            take_customer(tok[i + 1]);
            i += 2;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        fail("some customer is not served");
    }
    return trips;
}

EncodedSolution encode(std::span<const DroneTrip> trips, const Cluster& cluster, Mode mode)
{
    std::map<std::size_t, std::size_t> drone_local;
    for (std::size_t k = 0; k < cluster.drones.size(); ++k) {
        drone_local.emplace(cluster.drones[k], k);
    }
    std::map<std::size_t, std::size_t> customer_local;
    for (std::size_t k = 0; k < cluster.customers.size(); ++k) {
        customer_local.emplace(cluster.customers[k], k);
    }

    EncodedSolution sol;
    sol.mode = mode;
    for (const auto& trip : trips) {
        auto d = drone_local.find(trip.drone);
        if (d == drone_local.end() || trip.visits.empty()
            || (mode == Mode::recharging && trip.visits.size() != 1)) {
            throw Error(ErrorCode::decode_error, "trip does not fit the cluster encoding");
        }
        sol.tokens.push_back(drone_label(cluster, d->second));
        for (std::size_t c : trip.visits) {
            auto it = customer_local.find(c);
            if (it == customer_local.end()) {
                throw Error(ErrorCode::decode_error, "trip visits a customer outside the cluster");
            }
            sol.tokens.push_back(center_label());
            sol.tokens.push_back(customer_label(cluster, it->second));
        }
    }
    return sol;
}

double cluster_cost(std::span<const DroneTrip> trips, const Instance& inst)
{
    std::map<std::size_t, std::pair<double, const DroneTrip*>> per_drone;
    for (const auto& trip : trips) {
        const double len = trip_length(trip, inst);
        if (len > inst.range + kLengthTol) {
            throw Error(ErrorCode::range_violation, "drone trip exceeds the range");
        }
        auto& [total, final_trip] = per_drone[trip.drone];
        total += len;
        final_trip = &trip;
    }
    double worst = 0.0;
    for (const auto& [drone, entry] : per_drone) {
        const double t = (entry.first - last_leg(*entry.second, inst)) / inst.drone_speed;
        worst = std::max(worst, t);
    }
    return worst;
}

std::size_t action_list_size(const Cluster& cluster) noexcept
{
    const std::size_t nc = cluster.customers.size();
    return nc * (nc - (nc > 0 ? 1 : 0)) / 2 + cluster.drones.size();
}

std::size_t tabu_list_size(const Cluster& cluster, const TabuParams& params) noexcept
{
    return static_cast<std::size_t>(std::floor(params.tabu_ratio * static_cast<double>(action_list_size(cluster))));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Geometry of one cluster in local indices plus the per-drone cost model.
class ClusterModel {
public:
    ClusterModel(const Instance& inst, const Cluster& cluster, Mode mode)
        : nc_(cluster.customers.size()), nd_(cluster.drones.size()), mode_(mode),
          range_(inst.range + kLengthTol), speed_(inst.drone_speed)
    {
        to_center_.resize(nc_);
        for (std::size_t c = 0; c < nc_; ++c) {
            to_center_[c] = dist(cluster.center, inst.customers[cluster.customers[c]]);
        }
        base_center_.resize(nd_);
        home_.assign(nd_ * nc_, 0.0);
        for (std::size_t d = 0; d < nd_; ++d) {
            const Point2 base = inst.drone_bases[cluster.drones[d]];
            base_center_[d] = dist(base, cluster.center);
            for (std::size_t c = 0; c < nc_; ++c) {
                home_[d * nc_ + c] = dist(inst.customers[cluster.customers[c]], base);
            }
        }
    }

    double loop(std::size_t d, std::size_t c) const { return base_center_[d] + to_center_[c] + home(d, c); }
    double home(std::size_t d, std::size_t c) const { return home_[d * nc_ + c]; }
    bool can_serve(std::size_t d, std::size_t c) const { return loop(d, c) <= range_; }

    // Time of drone d serving `seq` in that order; kInf when infeasible.
    // `split` receives the trip boundaries (end index of each trip) if given.
    double drone_time(std::size_t d, std::span<const std::size_t> seq, std::vector<std::size_t>* split = nullptr) const
    {
        if (seq.empty()) {
            if (split) {
                split->clear();
            }
            return 0.0;
        }
        if (mode_ == Mode::recharging) {
            double total = 0.0;
            double max_home = 0.0;
            for (std::size_t c : seq) {
                const double l = loop(d, c);
                if (l > range_) {
                    return kInf;
                }
                total += l;
                max_home = std::max(max_home, home(d, c));
            }
            return (total - max_home) / speed_;
        }
        const double total = best_split(d, seq, split);
        if (total == kInf) {
            return kInf;
        }
        return (total - home(d, seq.back())) / speed_;
    }

private:
    // Cheapest way to cut the ordered sequence into consecutive trips that
    // each fit the range. A trip over seq[u..t] costs
    // base_center + 2*sum(to_center over u..t-1) + to_center[t] + home[t].
    double best_split(std::size_t d, std::span<const std::size_t> seq, std::vector<std::size_t>* split) const
    {
        const std::size_t m = seq.size();
        prefix_.assign(m + 1, 0.0);
        for (std::size_t t = 0; t < m; ++t) {
            prefix_[t + 1] = prefix_[t] + 2.0 * to_center_[seq[t]];
        }
        best_.assign(m + 1, kInf);
        from_.assign(m + 1, 0);
        best_[0] = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            const double tail = to_center_[seq[t]] + home(d, seq[t]) + base_center_[d];
            // walk u downwards: the trip only grows, so stop once it breaks the range
            for (std::size_t u = t + 1; u-- > 0;) {
                const double len = prefix_[t] - prefix_[u] + tail;
                if (len > range_) {
                    break;
                }
                const double cand = best_[u] + len;
                if (cand < best_[t + 1]) {
                    best_[t + 1] = cand;
                    from_[t + 1] = u;
                }
            }
        }
        if (split && best_[m] < kInf) {
            split->clear();
            for (std::size_t t = m; t > 0; t = from_[t]) {
                split->push_back(t);
            }
            std::reverse(split->begin(), split->end());
        }
        return best_[m];
    }

    std::size_t nc_;
    std::size_t nd_;
    Mode mode_;
    double range_;
    double speed_;
    std::vector<double> to_center_;
    std::vector<double> base_center_;
    std::vector<double> home_;
    mutable std::vector<double> prefix_;
    mutable std::vector<double> best_;
    mutable std::vector<std::size_t> from_;
};

struct Slot {
    std::size_t drone;
    std::size_t customer;
};

// The search state: one slot per customer in encoding order.
struct State {
    std::vector<Slot> slots;
    std::vector<double> drone_times;
    double cost = 0.0;
};

std::vector<std::size_t> customers_of(const std::vector<Slot>& slots, std::size_t d)
{
    std::vector<std::size_t> seq;
    for (const auto& s : slots) {
        if (s.drone == d) {
            seq.push_back(s.customer);
        }
    }
    return seq;
}

double makespan(std::span<const double> times)
{
    double worst = 0.0;
    for (double t : times) {
        worst = std::max(worst, t);
    }
    return worst;
}

struct Move {
    std::size_t action = 0;
    std::size_t slot = 0;  // drone changes only
    double cost = kInf;
    double time_a = 0.0;
    double time_b = 0.0;
    std::size_t drone_a = 0;
    std::size_t drone_b = 0;
};

class TabuSearch {
public:
    TabuSearch(const ClusterModel& model, std::size_t nc, std::size_t nd, std::uint64_t seed)
        : model_(model), nc_(nc), nd_(nd), rng_(seed)
    {
        for (std::size_t a = 0; a < nc_; ++a) {
            for (std::size_t b = a + 1; b < nc_; ++b) {
                swaps_.emplace_back(a, b);
            }
        }
    }

    std::size_t num_actions() const { return swaps_.size() + nd_; }

    // Applies `slots` with fresh times. Returns false if infeasible.
    bool reset(State& st) const
    {
        st.drone_times.assign(nd_, 0.0);
        for (std::size_t d = 0; d < nd_; ++d) {
            auto seq = customers_of(st.slots, d);
            st.drone_times[d] = model_.drone_time(d, seq);
            if (st.drone_times[d] == kInf) {
                return false;
            }
        }
        st.cost = makespan(st.drone_times);
        return true;
    }

    // Scores action `a` on `st`; cost is kInf when the neighbour is invalid.
    Move score(State& st, std::size_t a)
    {
        Move mv;
        mv.action = a;
        if (a < swaps_.size()) {
            auto [ca, cb] = swaps_[a];
            const std::size_t pa = position(st, ca);
            const std::size_t pb = position(st, cb);
            std::swap(st.slots[pa].customer, st.slots[pb].customer);
            price(st, st.slots[pa].drone, st.slots[pb].drone, mv);
            std::swap(st.slots[pa].customer, st.slots[pb].customer);
            return mv;
        }
        const std::size_t d = a - swaps_.size();
        candidates_.clear();
        for (std::size_t p = 0; p < st.slots.size(); ++p) {
            if (st.slots[p].drone != d && model_.can_serve(d, st.slots[p].customer)) {
                candidates_.push_back(p);
            }
        }
        if (candidates_.empty()) {
            return mv;
        }
        mv.slot = candidates_[rng_.index(candidates_.size())];
        const std::size_t old = st.slots[mv.slot].drone;
        st.slots[mv.slot].drone = d;
        price(st, old, d, mv);
        st.slots[mv.slot].drone = old;
        return mv;
    }

    void apply(State& st, const Move& mv) const
    {
        if (mv.action < swaps_.size()) {
            auto [ca, cb] = swaps_[mv.action];
            std::swap(st.slots[position(st, ca)].customer, st.slots[position(st, cb)].customer);
        } else {
            st.slots[mv.slot].drone = mv.action - swaps_.size();
        }
        st.drone_times[mv.drone_a] = mv.time_a;
        st.drone_times[mv.drone_b] = mv.time_b;
        st.cost = mv.cost;
    }

private:
    static std::size_t position(const State& st, std::size_t customer)
    {
        for (std::size_t p = 0; p < st.slots.size(); ++p) {
            if (st.slots[p].customer == customer) {
                return p;
            }
        }
        return st.slots.size();
    }

    // Re-times drones a and b after the slots were modified in place.
    void price(const State& st, std::size_t a, std::size_t b, Move& mv) const
    {
        mv.drone_a = a;
        mv.drone_b = b;
        mv.time_a = model_.drone_time(a, customers_of(st.slots, a));
        mv.time_b = a == b ? mv.time_a : model_.drone_time(b, customers_of(st.slots, b));
        if (mv.time_a == kInf || mv.time_b == kInf) {
            mv.cost = kInf;
            return;
        }
        double worst = std::max(mv.time_a, mv.time_b);
        for (std::size_t d = 0; d < nd_; ++d) {
            if (d != a && d != b) {
                worst = std::max(worst, st.drone_times[d]);
            }
        }
        mv.cost = worst;
    }

    const ClusterModel& model_;
    std::size_t nc_;
    std::size_t nd_;
    Rng rng_;
    std::vector<std::pair<std::size_t, std::size_t>> swaps_;
    std::vector<std::size_t> candidates_;
};

// Builds flight-ordered trips for the state. Recharging puts the trip with
// the longest way home last; revisiting follows the optimal split.
std::vector<DroneTrip> to_trips(const State& st, const ClusterModel& model, const Cluster& cluster, Mode mode)
{
    std::vector<DroneTrip> trips;
    for (std::size_t d = 0; d < cluster.drones.size(); ++d) {
        auto seq = customers_of(st.slots, d);
        if (seq.empty()) {
            continue;
        }
        auto make = [&](std::span<const std::size_t> visits) {
            DroneTrip t;
            t.drone = cluster.drones[d];
            t.center = cluster.center;
            t.mode = mode;
            for (std::size_t c : visits) {
                t.visits.push_back(cluster.customers[c]);
            }
            trips.push_back(std::move(t));
        };
        if (mode == Mode::recharging) {
            std::size_t far = 0;
            for (std::size_t k = 1; k < seq.size(); ++k) {
                if (model.home(d, seq[k]) > model.home(d, seq[far])) {
                    far = k;
                }
            }
            std::rotate(seq.begin() + static_cast<std::ptrdiff_t>(far),
                        seq.begin() + static_cast<std::ptrdiff_t>(far) + 1, seq.end());
            for (std::size_t c : seq) {
                make(std::span<const std::size_t>(&c, 1));
            }
        } else {
            std::vector<std::size_t> ends;
            model.drone_time(d, seq, &ends);
            std::size_t start = 0;
            for (std::size_t end : ends) {
                make(std::span<const std::size_t>(seq).subspan(start, end - start));
                start = end;
            }
        }
    }
    return trips;
}

}  // namespace

TabuResult tabu_search(const Instance& inst, const Cluster& cluster, Mode mode,
                       const TabuParams& params, std::uint64_t seed)
{
    const std::size_t nc = cluster.customers.size();
    const std::size_t nd = cluster.drones.size();
    ClusterModel model(inst, cluster, mode);

    State st;
    st.slots.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t pick = nd;
        for (std::size_t d = 0; d < nd; ++d) {
            if (model.can_serve(d, c) && (pick == nd || model.home(d, c) < model.home(pick, c))) {
                pick = d;
            }
        }
        if (pick == nd) {
            throw Error(ErrorCode::infeasible_cluster,
                        "customer " + std::to_string(cluster.customers[c]) + " is out of reach of every drone");
        }
        st.slots.push_back({pick, c});
    }

    TabuSearch search(model, nc, nd, seed);
    if (!search.reset(st)) {
        throw Error(ErrorCode::infeasible_cluster, "initial assignment breaks the range");
    }
    State best = st;

    const std::size_t tenure = tabu_list_size(cluster, params);
    std::vector<std::size_t> counter(search.num_actions(), 0);
    TabuResult result;
    result.best_trace.reserve(params.iterations);

    for (std::size_t it = 0; it < params.iterations; ++it) {
        Move chosen;
        bool any_valid = false;
        bool found = false;
        for (std::size_t a = 0; a < counter.size(); ++a) {
            Move mv = search.score(st, a);
            if (mv.cost == kInf) {
                continue;
            }
            any_valid = true;
            const bool admissible = counter[a] == 0 || mv.cost < best.cost - 1e-12;
            if (admissible && (!found || mv.cost < chosen.cost)) {
                chosen = mv;
                found = true;
            }
        }
        if (!any_valid) {
            break;
        }
        for (std::size_t a = 0; a < counter.size(); ++a) {
            if (counter[a] > 0 && (!found || a != chosen.action)) {
                --counter[a];
            }
        }
        if (found) {
            search.apply(st, chosen);
            counter[chosen.action] = tenure;
            if (st.cost < best.cost - 1e-12) {
                best = st;
            }
        }
        result.best_trace.push_back(best.cost);
    }

    result.trips = to_trips(best, model, cluster, mode);
    result.solution = encode(result.trips, cluster, mode);
    result.cost = cluster_cost(result.trips, inst);
    return result;
}

std::vector<DroneTrip> enumerate_routes(const Instance& inst, std::span<const std::size_t> customers,
                                        Point2 center, std::size_t drone, Mode mode, std::size_t max_visits)
{
    if (mode == Mode::recharging) {
        max_visits = 1;
    }
    const Point2 base = inst.drone_bases.at(drone);
    const double to_center = dist(base, center);
    const double limit = inst.range + kLengthTol;

    std::vector<DroneTrip> routes;
    std::vector<std::size_t> path;
    std::vector<bool> used(customers.size(), false);

    // `open` is the length so far excluding the final center->last->base part
    auto dfs = [&](auto&& self, double open) -> void {
        for (std::size_t k = 0; k < customers.size(); ++k) {
            if (used[k]) {
                continue;
            }
            const Point2 z = inst.customers[customers[k]];
            const double cz = dist(center, z);
            const double len = open + cz + dist(z, base);
            // adding visits never shortens a trip, so an overlong prefix is dead
            if (len > limit) {
                continue;
            }
            path.push_back(customers[k]);
            used[k] = true;
            routes.push_back(DroneTrip{drone, center, path, mode});
            if (path.size() < max_visits) {
                self(self, open + 2.0 * cz);
            }
            used[k] = false;
            path.pop_back();
        }
    };
    dfs(dfs, to_center);
    return routes;
}

}  // namespace tspsd
