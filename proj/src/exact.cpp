#include "tspsd/exact.hpp"

#include "tspsd/tsp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace tspsd {

const char* to_string(Problem problem) noexcept
{
    switch (problem) {
    case Problem::I: return "I";
    case Problem::II: return "II";
    case Problem::III: return "III";
    case Problem::IV: return "IV";
    case Problem::I_alt: return "I_alt";
    case Problem::II_alt: return "II_alt";
    }
    return "unknown";
}

Problem parse_problem(const std::string& text)
{
    static const std::map<std::string, Problem> names{
        {"1", Problem::I},       {"I", Problem::I},           {"2", Problem::II},
        {"II", Problem::II},     {"3", Problem::III},         {"III", Problem::III},
        {"4", Problem::IV},      {"IV", Problem::IV},         {"1alt", Problem::I_alt},
        {"I_alt", Problem::I_alt}, {"2alt", Problem::II_alt}, {"II_alt", Problem::II_alt},
    };
    auto it = names.find(text);
    if (it == names.end()) {
        throw Error(ErrorCode::invalid_input, "unknown problem '" + text + "'");
    }
    return it->second;
}

Mode problem_mode(Problem problem) noexcept
{
    return problem == Problem::II || problem == Problem::IV || problem == Problem::II_alt ? Mode::revisiting
                                                                                         : Mode::recharging;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Mask = unsigned;

// Cheapest way for one drone working at one center to serve each customer
// subset, with the backpointers needed to rebuild the trips.
struct DroneTable {
    std::vector<double> time;         // per mask, includes the final-leg deduction
    std::vector<Mask> final_trip;     // trip flown last
    std::vector<double> flight;       // per mask, plain minimum total length
    std::vector<Mask> first_trip;     // partition backpointer for `flight`
    std::vector<double> route;        // single trip over the mask, best last visit
    std::vector<std::size_t> route_last;
    std::vector<double> route_open;   // single trip minus its final leg
    std::vector<std::size_t> open_last;
};

class Oracle {
public:
    Oracle(const Instance& inst, Mode mode, std::size_t max_visits)
        : inst_(inst), mode_(mode), max_visits_(mode == Mode::recharging ? 1 : max_visits),
          n_(inst.num_customers()), nd_(inst.num_drones())
    {
    }

    ExactResult solve_multi()
    {
        const Mask full = (Mask{1} << n_) - 1;
        for (Mask truck = 1; truck <= full; ++truck) {
            std::vector<Point2> pts;
            std::vector<std::size_t> sites;
            for (std::size_t c = 0; c < n_; ++c) {
                if (truck >> c & 1U) {
                    pts.push_back(inst_.customers[c]);
                    sites.push_back(c);
                }
            }
            const Tour tour = exact_tour(pts);
            const double truck_time = tour.length / inst_.truck_speed;
            if (truck_time >= best_) {
                continue;
            }
            std::vector<Point2> centers;
            std::vector<std::size_t> ordered_sites;
            for (std::size_t i : tour.order) {
                centers.push_back(pts[i]);
                ordered_sites.push_back(sites[i]);
            }
            search(centers, full & ~truck, truck_time, [&] {
                best_sites_ = ordered_sites;
                best_centers_ = centers;
            });
        }
        return result();
    }

    ExactResult solve_single(Point2 center)
    {
        const Mask full = (Mask{1} << n_) - 1;
        search({center}, full, 0.0, [&] {
            best_sites_.assign(1, kNoSite);
            best_centers_.assign(1, center);
        });
        if (best_ == kInf) {
            throw Error(ErrorCode::infeasible_cluster, "some customer is out of reach of every drone");
        }
        return result();
    }

private:
    static constexpr std::size_t kNoSite = std::numeric_limits<std::size_t>::max();

    struct Choice {
        std::size_t center = 0;  // index into the candidate centers, or idle
        Mask mask = 0;
    };

    void search(const std::vector<Point2>& centers, Mask todo, double truck_time, std::function<void()> on_better)
    {
        centers_ = &centers;
        tables_.assign(nd_ * centers.size(), {});
        peak_.assign(centers.size(), 0.0);
        choice_.assign(nd_, Choice{centers.size(), 0});
        truck_time_ = truck_time;
        on_better_ = std::move(on_better);
        dfs(0, todo);
    }

    double bound() const
    {
        double total = truck_time_;
        for (double q : peak_) {
            total += q;
        }
        return total;
    }

    void dfs(std::size_t drone, Mask todo)
    {
        ++nodes_;
        const double now = bound();
        if (now >= best_) {
            return;
        }
        if (todo == 0) {
            best_ = now;
            best_choice_ = choice_;
            on_better_();
            return;
        }
        if (drone == nd_) {
            return;
        }
        choice_[drone] = Choice{centers_->size(), 0};
        dfs(drone + 1, todo);
        for (std::size_t p = 0; p < centers_->size(); ++p) {
            const DroneTable& tab = table(drone, p);
            for (Mask sub = todo; sub != 0; sub = (sub - 1) & todo) {
                const double t = tab.time[sub];
                if (t == kInf) {
                    continue;
                }
                const double saved = peak_[p];
                peak_[p] = std::max(saved, t);
                choice_[drone] = Choice{p, sub};
                dfs(drone + 1, todo & ~sub);
                peak_[p] = saved;
            }
        }
        choice_[drone] = Choice{centers_->size(), 0};
    }

    const DroneTable& table(std::size_t drone, std::size_t p)
    {
        DroneTable& tab = tables_[drone * centers_->size() + p];
        if (!tab.time.empty()) {
            return tab;
        }
        build(tab, drone, (*centers_)[p]);
        return tab;
    }

    void build(DroneTable& tab, std::size_t drone, Point2 center) const
    {
        const Mask size = Mask{1} << n_;
        const Point2 base = inst_.drone_bases[drone];
        const double bc = dist(base, center);
        const double limit = inst_.range + kLengthTol;
        std::vector<double> cz(n_);
        std::vector<double> home(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            cz[c] = dist(center, inst_.customers[c]);
            home[c] = dist(inst_.customers[c], base);
        }

        tab.route.assign(size, kInf);
        tab.route_open.assign(size, kInf);
        tab.route_last.assign(size, 0);
        tab.open_last.assign(size, 0);
        for (Mask s = 1; s < size; ++s) {
            if (static_cast<std::size_t>(std::popcount(s)) > max_visits_) {
                continue;
            }
            double twice = 0.0;
            for (std::size_t c = 0; c < n_; ++c) {
                if (s >> c & 1U) {
                    twice += 2.0 * cz[c];
                }
            }
            for (std::size_t z = 0; z < n_; ++z) {
                if (!(s >> z & 1U)) {
                    continue;
                }
                const double len = bc + twice - cz[z] + home[z];
                if (len > limit) {
                    continue;
                }
                if (len < tab.route[s]) {
                    tab.route[s] = len;
                    tab.route_last[s] = z;
                }
                if (len - home[z] < tab.route_open[s]) {
                    tab.route_open[s] = len - home[z];
                    tab.open_last[s] = z;
                }
            }
        }

        tab.flight.assign(size, kInf);
        tab.first_trip.assign(size, 0);
        tab.flight[0] = 0.0;
        for (Mask m = 1; m < size; ++m) {
            const Mask low = m & (~m + 1);
            const Mask rest = m & ~low;
            // the trip holding the lowest customer, plus any subset of the rest
            for (Mask extra = rest;; extra = (extra - 1) & rest) {
                const Mask trip = extra | low;
                const double v = tab.route[trip] + tab.flight[m & ~trip];
                if (v < tab.flight[m]) {
                    tab.flight[m] = v;
                    tab.first_trip[m] = trip;
                }
                if (extra == 0) {
                    break;
                }
            }
        }

        tab.time.assign(size, kInf);
        tab.final_trip.assign(size, 0);
        for (Mask m = 1; m < size; ++m) {
            for (Mask trip = m; trip != 0; trip = (trip - 1) & m) {
                const double v = tab.route_open[trip] + tab.flight[m & ~trip];
                if (v < tab.time[m]) {
                    tab.time[m] = v;
                    tab.final_trip[m] = trip;
                }
            }
            tab.time[m] /= inst_.drone_speed;
        }
    }

    DroneTrip make_trip(std::size_t drone, Point2 center, Mask trip, std::size_t last) const
    {
        DroneTrip t;
        t.drone = drone;
        t.center = center;
        t.mode = mode_;
        for (std::size_t c = 0; c < n_; ++c) {
            if ((trip >> c & 1U) && c != last) {
                t.visits.push_back(c);
            }
        }
        t.visits.push_back(last);
        return t;
    }

    ExactResult result()
    {
        ExactResult out;
        out.nodes_explored = nodes_;
        if (best_ == kInf) {
            throw Error(ErrorCode::infeasible_cluster, "no feasible plan");
        }
        Plan& plan = out.plan;
        for (std::size_t i = 0; i < best_centers_.size(); ++i) {
            TruckStop stop{best_centers_[i], std::nullopt};
            if (best_sites_[i] != kNoSite) {
                stop.customer = best_sites_[i];
                plan.truck_served.push_back(best_sites_[i]);
            }
            plan.truck_stops.push_back(stop);
        }
        std::sort(plan.truck_served.begin(), plan.truck_served.end());

        // tables were built for the last searched center set; rebuild the
        // ones the winning choice needs
        for (std::size_t d = 0; d < nd_; ++d) {
            const Choice& ch = best_choice_[d];
            if (ch.mask == 0) {
                continue;
            }
            const Point2 center = best_centers_[ch.center];
            DroneTable tab;
            build(tab, d, center);
            const Mask final_trip = tab.final_trip[ch.mask];
            for (Mask rest = ch.mask & ~final_trip; rest != 0; rest &= ~tab.first_trip[rest]) {
                const Mask trip = tab.first_trip[rest];
                plan.drone_trips.push_back(make_trip(d, center, trip, tab.route_last[trip]));
            }
            plan.drone_trips.push_back(make_trip(d, center, final_trip, tab.open_last[final_trip]));
        }
        finalize(plan, inst_);
        out.objective = plan.objective;
        return out;
    }

    const Instance& inst_;
    Mode mode_;
    std::size_t max_visits_;
    std::size_t n_;
    std::size_t nd_;

    const std::vector<Point2>* centers_ = nullptr;
    std::vector<DroneTable> tables_;
    std::vector<double> peak_;
    std::vector<Choice> choice_;
    double truck_time_ = 0.0;
    std::function<void()> on_better_;

    double best_ = kInf;
    std::vector<Choice> best_choice_;
    std::vector<std::size_t> best_sites_;
    std::vector<Point2> best_centers_;
    std::size_t nodes_ = 0;
};

}  // namespace

ExactResult brute_force(const Instance& inst, Problem problem, std::size_t max_visits)
{
    inst.validate();
    if (problem == Problem::I_alt || problem == Problem::II_alt) {
        throw Error(ErrorCode::invalid_input, "the alternative models are export-only");
    }
    if (inst.num_customers() > kOracleMaxCustomers || inst.num_drones() > kOracleMaxDrones) {
        throw Error(ErrorCode::too_large, "oracle limited to " + std::to_string(kOracleMaxCustomers)
                                              + " customers and " + std::to_string(kOracleMaxDrones) + " drones");
    }
    if (max_visits == 0) {
        throw Error(ErrorCode::invalid_input, "max_visits must be at least 1");
    }
    Oracle oracle(inst, problem_mode(problem), max_visits);
    if (problem == Problem::I || problem == Problem::II) {
        return oracle.solve_single(inst.one_center());
    }
    return oracle.solve_multi();
}

double verify_against_oracle(const Instance& inst, Problem problem, const Plan& heuristic_plan)
{
    const std::size_t visits = problem_mode(problem) == Mode::revisiting ? inst.num_customers() : 1;
    const ExactResult opt = brute_force(inst, problem, std::max<std::size_t>(visits, 1));
    const double heuristic = evaluate(heuristic_plan, inst).objective;
    if (opt.objective == 0.0) {
        return heuristic == 0.0 ? 0.0 : kInf;
    }
    return (heuristic - opt.objective) / opt.objective;
}

}  // namespace tspsd
