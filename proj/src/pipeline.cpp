#include "tspsd/pipeline.hpp"

#include "tspsd/clustering.hpp"
#include "tspsd/random.hpp"
#include "tspsd/tsp.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace tspsd {

const char* to_string(Algorithm algorithm) noexcept
{
    switch (algorithm) {
    case Algorithm::original: return "original";
    case Algorithm::alg1: return "alg1";
    case Algorithm::alg2: return "alg2";
    case Algorithm::alg3: return "alg3";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& text)
{
    if (text == "original" || text == "0") {
        return Algorithm::original;
    }
    if (text == "1" || text == "alg1") {
        return Algorithm::alg1;
    }
    if (text == "2" || text == "alg2") {
        return Algorithm::alg2;
    }
    if (text == "3" || text == "alg3") {
        return Algorithm::alg3;
    }
    throw Error(ErrorCode::invalid_input, "unknown algorithm '" + text + "'");
}

namespace {

// A truck stop with the drones working there. `site` is set when the stop is
// a customer location (that customer is then truck-served). A center with
// neither a site nor drone customers is not visited at all.
struct Center {
    Point2 location;
    std::optional<std::size_t> site;
    std::vector<std::size_t> customers;  // drone-served
    std::vector<std::size_t> drones;
};

struct Layout {
    std::vector<Center> centers;
    std::vector<Point2> initial_centers;
};

bool can_serve(const Instance& inst, std::size_t drone, Point2 center, std::size_t customer)
{
    return loop_length(inst.drone_bases[drone], center, inst.customers[customer]) <= inst.range + kLengthTol;
}

bool any_can_serve(const Instance& inst, std::span<const std::size_t> drones, Point2 center, std::size_t customer)
{
    return std::any_of(drones.begin(), drones.end(),
                       [&](std::size_t d) { return can_serve(inst, d, center, customer); });
}

Center standalone(const Instance& inst, std::size_t customer)
{
    return Center{inst.customers[customer], customer, {}, {}};
}

Layout original_layout(const Instance& inst, const PipelineConfig& config)
{
    const Clustering cl = min_feasible_k(inst, config.params.seed);
    Layout out;
    out.initial_centers = cl.centers;

    std::vector<Center> cells(cl.k);
    for (std::size_t c = 0; c < cl.k; ++c) {
        cells[c].location = cl.centers[c];
    }
    for (std::size_t d = 0; d < inst.num_drones(); ++d) {
        if (cl.drone_assignment[d] != kUnassigned) {
            cells[cl.drone_assignment[d]].drones.push_back(d);
        }
    }
    std::vector<std::size_t> truck;
    for (std::size_t c = 0; c < inst.num_customers(); ++c) {
        const std::size_t cell = cl.customer_assignment[c];
        if (cell == kUnassigned || cells[cell].drones.empty()) {
            truck.push_back(c);
        } else {
            cells[cell].customers.push_back(c);
        }
    }
    for (auto& cell : cells) {
        if (!cell.customers.empty()) {
            out.centers.push_back(std::move(cell));
        }
    }
    for (std::size_t c : truck) {
        out.centers.push_back(standalone(inst, c));
    }
    return out;
}

// Moves every drone cell onto its nearest customer and sends the customers
// its drones can no longer reach to the truck.
void relocate_to_nearest(const Instance& inst, Layout& layout)
{
    std::vector<Center> next;
    std::vector<std::size_t> truck;
    for (auto& cell : layout.centers) {
        if (cell.site) {
            next.push_back(std::move(cell));
            continue;
        }
        std::size_t pick = cell.customers.front();
        for (std::size_t c : cell.customers) {
            const double dc = dist(inst.customers[c], cell.location);
            const double dp = dist(inst.customers[pick], cell.location);
            if (dc < dp || (dc == dp && c < pick)) {
                pick = c;
            }
        }
        Center moved{inst.customers[pick], pick, {}, cell.drones};
        for (std::size_t c : cell.customers) {
            if (c == pick) {
                continue;
            }
            if (any_can_serve(inst, moved.drones, moved.location, c)) {
                moved.customers.push_back(c);
            } else {
                truck.push_back(c);
            }
        }
        // one customer left: the truck takes it when the out-and-back drive
        // beats the quickest drone loop
        if (moved.customers.size() == 1) {
            const std::size_t z = moved.customers.front();
            double fastest = -1.0;
            for (std::size_t d : moved.drones) {
                if (can_serve(inst, d, moved.location, z)) {
                    const double t = loop_length(inst.drone_bases[d], moved.location, inst.customers[z]) / inst.drone_speed;
                    fastest = fastest < 0.0 ? t : std::min(fastest, t);
                }
            }
            if (2.0 * dist(inst.customers[z], moved.location) / inst.truck_speed <= fastest) {
                moved.customers.clear();
                truck.push_back(z);
            }
        }
        next.push_back(std::move(moved));
    }
    std::sort(truck.begin(), truck.end());
    for (std::size_t c : truck) {
        next.push_back(standalone(inst, c));
    }
    layout.centers = std::move(next);
}

std::vector<Point2> stop_locations(const Layout& layout)
{
    std::vector<Point2> pts;
    for (const auto& c : layout.centers) {
        if (c.site || !c.customers.empty()) {
            pts.push_back(c.location);
        }
    }
    return pts;
}

// Moves each drone cell to the customer nearest g that still has a drone
// within L/4 and keeps every other cell customer servable.
void relocate_towards(const Instance& inst, Layout& layout, Point2 g)
{
    const double quarter = inst.range / 4.0;
    for (auto& cell : layout.centers) {
        if (cell.customers.empty()) {
            continue;
        }
        std::vector<std::size_t> members = cell.customers;
        members.push_back(*cell.site);
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const double da = dist(inst.customers[a], g);
            const double db = dist(inst.customers[b], g);
            return da < db || (da == db && a < b);
        });
        const double current = dist(cell.location, g);
        for (std::size_t z : members) {
            if (z == *cell.site) {
                break;
            }
            const Point2 pz = inst.customers[z];
            if (dist(pz, g) > current) {
                break;
            }
            const bool docked = std::any_of(cell.drones.begin(), cell.drones.end(),
                                            [&](std::size_t d) { return dist(inst.drone_bases[d], pz) < quarter; });
            if (!docked) {
                continue;
            }
            bool keeps = true;
            for (std::size_t c : members) {
                if (c != z && !any_can_serve(inst, cell.drones, pz, c)) {
                    keeps = false;
                    break;
                }
            }
            if (!keeps) {
                continue;
            }
            std::vector<std::size_t> others;
            for (std::size_t c : members) {
                if (c != z) {
                    others.push_back(c);
                }
            }
            std::sort(others.begin(), others.end());
            cell.location = pz;
            cell.site = z;
            cell.customers = std::move(others);
            break;
        }
    }
}

// Index of the closest center able to serve `customer`.
std::optional<std::size_t> closest_capable(const Instance& inst, const std::vector<Center>& centers,
                                           std::size_t customer)
{
    std::optional<std::size_t> best;
    double best_d = 0.0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (!any_can_serve(inst, centers[k].drones, centers[k].location, customer)) {
            continue;
        }
        const double d = dist(centers[k].location, inst.customers[customer]);
        if (!best || d < best_d) {
            best = k;
            best_d = d;
        }
    }
    return best;
}

void reallocate(const Instance& inst, std::vector<Center>& centers)
{
    std::vector<std::size_t> served;
    for (auto& c : centers) {
        served.insert(served.end(), c.customers.begin(), c.customers.end());
    }
    std::sort(served.begin(), served.end());

    std::vector<Point2> locs;
    for (const auto& c : centers) {
        locs.push_back(c.location);
    }
    std::vector<Center> moved = centers;
    for (auto& c : moved) {
        c.drones.clear();
    }
    for (const auto& c : centers) {
        for (std::size_t d : c.drones) {
            moved[nearest_center(inst.drone_bases[d], locs)].drones.push_back(d);
        }
    }
    for (auto& c : moved) {
        std::sort(c.drones.begin(), c.drones.end());
    }
    // keep the old drone homes for this pass if the move would strand anyone
    const bool strands = std::any_of(served.begin(), served.end(),
                                     [&](std::size_t z) { return !closest_capable(inst, moved, z); });
    std::vector<Center>& target = strands ? centers : moved;
    for (auto& c : target) {
        c.customers.clear();
    }
    for (std::size_t z : served) {
        target[*closest_capable(inst, target, z)].customers.push_back(z);
    }
    if (!strands) {
        centers = std::move(moved);
    }
}

// Every customer of r and s, and r's own site, has a pooled drone that can
// reach it from s.
bool mergeable(const Instance& inst, const Center& r, const Center& s)
{
    std::vector<std::size_t> pool = r.drones;
    pool.insert(pool.end(), s.drones.begin(), s.drones.end());
    auto ok = [&](std::size_t z) { return any_can_serve(inst, pool, s.location, z); };
    if (r.site && !ok(*r.site)) {
        return false;
    }
    return std::all_of(r.customers.begin(), r.customers.end(), ok)
        && std::all_of(s.customers.begin(), s.customers.end(), ok);
}

void absorb(Center& s, Center&& r)
{
    if (r.site) {
        s.customers.push_back(*r.site);
    }
    s.customers.insert(s.customers.end(), r.customers.begin(), r.customers.end());
    s.drones.insert(s.drones.end(), r.drones.begin(), r.drones.end());
    std::sort(s.customers.begin(), s.customers.end());
    std::sort(s.drones.begin(), s.drones.end());
}

void merge_centers(const Instance& inst, Layout& layout, Point2 g)
{
    auto& centers = layout.centers;
    for (;;) {
        if (centers.size() <= 1) {
            break;
        }
        std::stable_sort(centers.begin(), centers.end(), [&](const Center& a, const Center& b) {
            return dist(a.location, g) > dist(b.location, g);
        });
        reallocate(inst, centers);

        if (centers.size() == 2) {
            const std::size_t small = centers[1].customers.size() < centers[0].customers.size() ? 1 : 0;
            const std::size_t large = 1 - small;
            if (mergeable(inst, centers[small], centers[large])) {
                absorb(centers[large], std::move(centers[small]));
                centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(small));
            } else if (mergeable(inst, centers[large], centers[small])) {
                absorb(centers[small], std::move(centers[large]));
                centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(large));
            }
            break;
        }

        std::vector<bool> gone(centers.size(), false);
        std::size_t merges = 0;
        for (std::size_t r = 0; r < centers.size(); ++r) {
            if (gone[r]) {
                continue;
            }
            std::optional<std::size_t> s;
            double best_d = 0.0;
            for (std::size_t k = 0; k < centers.size(); ++k) {
                if (k == r || gone[k]) {
                    continue;
                }
                const double d = dist(centers[k].location, centers[r].location);
                if (!s || d < best_d
                    || (d == best_d && dist(centers[k].location, g) < dist(centers[*s].location, g))) {
                    s = k;
                    best_d = d;
                }
            }
            if (!s || !mergeable(inst, centers[r], centers[*s])) {
                continue;
            }
            absorb(centers[*s], std::move(centers[r]));
            gone[r] = true;
            ++merges;
        }
        std::vector<Center> kept;
        for (std::size_t k = 0; k < centers.size(); ++k) {
            if (!gone[k]) {
                kept.push_back(std::move(centers[k]));
            }
        }
        centers = std::move(kept);
        if (merges == 0) {
            break;
        }
    }
}

Plan build_plan(const Instance& inst, const Layout& layout, const PipelineConfig& config)
{
    Plan plan;
    plan.initial_centers = layout.initial_centers;

    std::vector<const Center*> stops;
    for (const auto& c : layout.centers) {
        if (c.site || !c.customers.empty()) {
            stops.push_back(&c);
        }
    }
    std::vector<Point2> pts;
    for (const Center* c : stops) {
        pts.push_back(c->location);
    }
    const Tour tour = lk_tour(pts, mix_seed(config.params.seed, 0x746f7572));
    for (std::size_t i : tour.order) {
        plan.truck_stops.push_back(TruckStop{stops[i]->location, stops[i]->site});
        if (stops[i]->site) {
            plan.truck_served.push_back(*stops[i]->site);
        }
    }
    std::sort(plan.truck_served.begin(), plan.truck_served.end());

    for (std::size_t i = 0; i < stops.size(); ++i) {
        const Center& c = *stops[i];
        if (c.customers.empty()) {
            continue;
        }
        const Cluster cluster{c.location, c.customers, c.drones};
        auto result = tabu_search(inst, cluster, config.mode, config.tabu, config.params.seed ^ i);
        plan.drone_trips.insert(plan.drone_trips.end(), result.trips.begin(), result.trips.end());
    }
    finalize(plan, inst);
    return plan;
}

Layout alg2_layout(const Instance& inst, const PipelineConfig& config, Point2* g_out)
{
    Layout layout = original_layout(inst, config);
    relocate_to_nearest(inst, layout);
    const auto pts = stop_locations(layout);
    const Point2 g = centroid(pts);
    relocate_towards(inst, layout, g);
    if (g_out) {
        *g_out = g;
    }
    return layout;
}

}  // namespace

Plan run_original(const Instance& inst, const PipelineConfig& config)
{
    inst.validate();
    return build_plan(inst, original_layout(inst, config), config);
}

Plan run_alg1(const Instance& inst, const PipelineConfig& config)
{
    inst.validate();
    Layout layout = original_layout(inst, config);
    relocate_to_nearest(inst, layout);
    return build_plan(inst, layout, config);
}

Plan run_alg2(const Instance& inst, const PipelineConfig& config)
{
    inst.validate();
    return build_plan(inst, alg2_layout(inst, config, nullptr), config);
}

Plan run_alg3(const Instance& inst, const PipelineConfig& config)
{
    inst.validate();
    Point2 g;
    Layout layout = alg2_layout(inst, config, &g);
    merge_centers(inst, layout, g);
    return build_plan(inst, layout, config);
}

Plan run(const Instance& inst, const PipelineConfig& config)
{
    switch (config.algorithm) {
    case Algorithm::original: return run_original(inst, config);
    case Algorithm::alg1: return run_alg1(inst, config);
    case Algorithm::alg2: return run_alg2(inst, config);
    case Algorithm::alg3: return run_alg3(inst, config);
    }
    throw Error(ErrorCode::invalid_input, "unknown algorithm");
}

Plan compare_modes(const Instance& inst, const PipelineConfig& config)
{
    PipelineConfig rc = config;
    rc.mode = Mode::recharging;
    PipelineConfig rv = config;
    rv.mode = Mode::revisiting;
    Plan a = run(inst, rc);
    Plan b = run(inst, rv);
    return b.objective < a.objective ? b : a;
}

}  // namespace tspsd
