#include "tspsd/milp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace tspsd {

double big_m(const Instance& inst) noexcept
{
    return static_cast<double>(inst.num_customers()) * (2.0 + std::sqrt(2.0))
         / std::min(inst.truck_speed, inst.drone_speed);
}

namespace {

std::string idx(std::size_t a)
{
    return std::to_string(a);
}

std::string idx(std::size_t a, std::size_t b)
{
    return std::to_string(a) + "_" + std::to_string(b);
}

std::string idx(std::size_t a, std::size_t b, std::size_t c)
{
    return idx(a, b) + "_" + std::to_string(c);
}

class Builder {
public:
    Builder(MilpModel& m) : m_(m) {}

    std::size_t var(const std::string& name, VarType type = VarType::continuous)
    {
        return m_.add_variable(name, type);
    }

    Constraint& row(std::string name, Sense sense, double rhs)
    {
        m_.constraints.push_back(Constraint{std::move(name), {}, sense, rhs});
        return m_.constraints.back();
    }

private:
    MilpModel& m_;
};

void add(Constraint& c, std::size_t var, double coef)
{
    c.terms.push_back(Term{var, coef});
}

std::string describe(const DroneTrip& trip, const std::string& var, const std::string& center)
{
    std::string s = var + " = drone " + std::to_string(trip.drone) + " via " + center + " visiting";
    for (std::size_t c : trip.visits) {
        s += " " + std::to_string(c);
    }
    return s;
}

// One center, one trip per customer through it.
void problem_one(MilpModel& m, const Instance& inst)
{
    Builder b(m);
    const std::size_t nc = inst.num_customers();
    const std::size_t nd = inst.num_drones();
    const Point2 center = inst.one_center();
    std::vector<std::size_t> x(nd * nc);
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            x[i * nc + j] = b.var("x_" + idx(i, j), VarType::binary);
        }
    }
    std::vector<std::size_t> q(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        q[i] = b.var("q_" + idx(i));
    }
    const std::size_t big_q = b.var("Q");
    m.objective.push_back(Term{big_q, 1.0});

    auto d = [&](std::size_t i, std::size_t j) {
        return loop_length(inst.drone_bases[i], center, inst.customers[j]);
    };
    for (std::size_t j = 0; j < nc; ++j) {
        auto& c = b.row("assign_" + idx(j), Sense::eq, 1.0);
        for (std::size_t i = 0; i < nd; ++i) {
            add(c, x[i * nc + j], 1.0);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            add(b.row("range_" + idx(i, j), Sense::le, inst.range), x[i * nc + j], d(i, j));
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("time_" + idx(i), Sense::le, 0.0);
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, x[i * nc + j], d(i, j) / inst.drone_speed);
        }
        add(c, q[i], -1.0);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("make_" + idx(i), Sense::le, 0.0);
        add(c, q[i], 1.0);
        add(c, big_q, -1.0);
    }
}

// One center, one variable per enumerated route.
void problem_two(MilpModel& m, const Instance& inst, std::size_t max_visits)
{
    Builder b(m);
    const std::size_t nc = inst.num_customers();
    const std::size_t nd = inst.num_drones();
    const Point2 center = inst.one_center();
    std::vector<std::size_t> all(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        all[j] = j;
    }

    struct Route {
        std::size_t var;
        DroneTrip trip;
        double length;
    };
    std::vector<Route> routes;
    for (std::size_t i = 0; i < nd; ++i) {
        const auto trips = enumerate_routes(inst, all, center, i, Mode::revisiting, max_visits);
        for (std::size_t k = 0; k < trips.size(); ++k) {
            const std::string name = "x_" + idx(i, k);
            m.comments.push_back(describe(trips[k], name, "center"));
            routes.push_back(Route{b.var(name, VarType::binary), trips[k], trip_length(trips[k], inst)});
        }
    }
    std::vector<std::size_t> q(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        q[i] = b.var("q_" + idx(i));
    }
    const std::size_t big_q = b.var("Q");
    m.objective.push_back(Term{big_q, 1.0});

    for (std::size_t j = 0; j < nc; ++j) {
        auto& c = b.row("assign_" + idx(j), Sense::eq, 1.0);
        for (const auto& r : routes) {
            if (std::find(r.trip.visits.begin(), r.trip.visits.end(), j) != r.trip.visits.end()) {
                add(c, r.var, 1.0);
            }
        }
    }
    for (const auto& r : routes) {
        add(b.row("range_" + m.variables[r.var].name.substr(2), Sense::le, inst.range), r.var, r.length);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("time_" + idx(i), Sense::le, 0.0);
        for (const auto& r : routes) {
            if (r.trip.drone == i) {
                add(c, r.var, r.length / inst.drone_speed);
            }
        }
        add(c, q[i], -1.0);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("make_" + idx(i), Sense::le, 0.0);
        add(c, q[i], 1.0);
        add(c, big_q, -1.0);
    }
}

// Centers on customers. With `routes` false every drone trip is a single
// visit x^p_ij (recharging); otherwise trips come from enumerate_routes.
void problem_multi(MilpModel& m, const Instance& inst, bool routes, std::size_t max_visits)
{
    Builder b(m);
    const std::size_t nc = inst.num_customers();
    const std::size_t nd = inst.num_drones();
    const double big = m.big_m;
    const double vd = inst.drone_speed;
    std::vector<std::size_t> all(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        all[j] = j;
    }

    std::vector<std::size_t> y(nc);
    for (std::size_t p = 0; p < nc; ++p) {
        y[p] = b.var("y_" + idx(p), VarType::binary);
    }

    // the drone trips available to drone i at center p
    struct Arc {
        std::size_t var;
        std::size_t eta = 0;
        std::vector<std::size_t> visits;
        double length;
        double last;
        std::string tag;
    };
    std::vector<std::vector<Arc>> arcs(nd * nc);
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t i = 0; i < nd; ++i) {
            auto& list = arcs[i * nc + p];
            if (!routes) {
                for (std::size_t j = 0; j < nc; ++j) {
                    const DroneTrip t{i, inst.customers[p], {j}, Mode::recharging};
                    list.push_back(Arc{b.var("x_" + idx(p, i, j), VarType::binary), 0, {j}, trip_length(t, inst),
                                       last_leg(t, inst), idx(p, i, j)});
                }
            } else {
                const auto trips = enumerate_routes(inst, all, inst.customers[p], i, Mode::revisiting, max_visits);
                for (std::size_t k = 0; k < trips.size(); ++k) {
                    const std::string name = "x_" + idx(p, i, k);
                    m.comments.push_back(describe(trips[k], name, "customer " + std::to_string(p)));
                    list.push_back(Arc{b.var(name, VarType::binary), 0, trips[k].visits, trip_length(trips[k], inst),
                                       last_leg(trips[k], inst), idx(p, i, k)});
                }
            }
        }
    }
    std::vector<std::size_t> z(nd * nc), q(nd * nc), delta(nd * nc), qp(nc);
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            z[i * nc + p] = b.var("z_" + idx(i, p), VarType::binary);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            q[i * nc + p] = b.var("q_" + idx(i, p));
        }
    }
    for (std::size_t p = 0; p < nc; ++p) {
        qp[p] = b.var("Qp_" + idx(p));
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            delta[i * nc + p] = b.var("Delta_" + idx(i, p));
        }
    }
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t i = 0; i < nd; ++i) {
            for (auto& a : arcs[i * nc + p]) {
                a.eta = b.var("eta_" + a.tag, VarType::binary);
            }
        }
    }
    std::vector<std::size_t> g(nc * nc);
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t r = 0; r < nc; ++r) {
            g[p * nc + r] = b.var("g_" + idx(p, r), VarType::binary);
        }
    }

    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t r = 0; r < nc; ++r) {
            m.objective.push_back(Term{g[p * nc + r], dist(inst.customers[p], inst.customers[r]) / inst.truck_speed});
        }
    }
    for (std::size_t p = 0; p < nc; ++p) {
        m.objective.push_back(Term{qp[p], 1.0});
    }

    {
        auto& c = b.row("mintruck", Sense::ge, 1.0);
        for (std::size_t p = 0; p < nc; ++p) {
            add(c, y[p], 1.0);
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        auto& c = b.row("assign_" + idx(j), Sense::eq, 1.0);
        for (std::size_t p = 0; p < nc; ++p) {
            for (std::size_t i = 0; i < nd; ++i) {
                for (const auto& a : arcs[i * nc + p]) {
                    if (std::find(a.visits.begin(), a.visits.end(), j) != a.visits.end()) {
                        add(c, a.var, 1.0);
                    }
                }
            }
        }
        add(c, y[j], 1.0);
    }
    for (std::size_t p = 0; p < nc; ++p) {
        auto& c = b.row("hub_" + idx(p), Sense::le, 0.0);
        for (std::size_t i = 0; i < nd; ++i) {
            add(c, z[i * nc + p], 1.0);
        }
        add(c, y[p], -big);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("one_" + idx(i), Sense::le, 1.0);
        for (std::size_t p = 0; p < nc; ++p) {
            add(c, z[i * nc + p], 1.0);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            auto& c = b.row("use_" + idx(i, p), Sense::le, 0.0);
            for (const auto& a : arcs[i * nc + p]) {
                add(c, a.var, 1.0);
            }
            add(c, z[i * nc + p], -big);
        }
    }
    if (!routes) {
        for (std::size_t p = 0; p < nc; ++p) {
            for (std::size_t i = 0; i < nd; ++i) {
                for (const auto& a : arcs[i * nc + p]) {
                    add(b.row("range_" + a.tag, Sense::le, inst.range), a.var, a.length);
                }
            }
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            // (1/v_D) sum d x - M (1 - z) <= q
            auto& c = b.row("time_" + idx(i, p), Sense::le, big);
            for (const auto& a : arcs[i * nc + p]) {
                add(c, a.var, a.length / vd);
            }
            add(c, q[i * nc + p], -1.0);
            add(c, z[i * nc + p], big);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            auto& c = b.row("make_" + idx(i, p), Sense::le, 0.0);
            add(c, q[i * nc + p], 1.0);
            add(c, delta[i * nc + p], -1.0 / vd);
            add(c, qp[p], -1.0);
        }
    }
    // Delta_ip is the longest final leg among the chosen trips
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t i = 0; i < nd; ++i) {
            for (const auto& a : arcs[i * nc + p]) {
                auto& c = b.row("lastge_" + a.tag, Sense::le, 0.0);
                add(c, a.var, a.last);
                add(c, delta[i * nc + p], -1.0);
            }
        }
    }
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t i = 0; i < nd; ++i) {
            for (const auto& a : arcs[i * nc + p]) {
                // Delta <= delta x + M (1 - eta)
                auto& c = b.row("lastle_" + a.tag, Sense::le, big);
                add(c, delta[i * nc + p], 1.0);
                add(c, a.var, -a.last);
                add(c, a.eta, big);
            }
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t p = 0; p < nc; ++p) {
            auto& c = b.row("pick_" + idx(i, p), Sense::ge, 0.0);
            for (const auto& a : arcs[i * nc + p]) {
                add(c, a.eta, 1.0);
            }
            add(c, z[i * nc + p], -1.0);
        }
    }
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t i = 0; i < nd; ++i) {
            for (const auto& a : arcs[i * nc + p]) {
                auto& c = b.row("etax_" + a.tag, Sense::le, 0.0);
                add(c, a.eta, 1.0);
                add(c, a.var, -1.0);
            }
        }
    }

    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t r = 0; r < nc; ++r) {
            if (p == r) {
                continue;
            }
            auto& c = b.row("path_" + idx(p, r), Sense::le, 0.0);
            add(c, g[p * nc + r], 2.0);
            add(c, y[p], -1.0);
            add(c, y[r], -1.0);
        }
    }
    for (std::size_t r = 0; r < nc; ++r) {
        auto& c = b.row("in_" + idx(r), Sense::eq, 0.0);
        for (std::size_t p = 0; p < nc; ++p) {
            add(c, g[p * nc + r], 1.0);
        }
        add(c, y[r], -1.0);
    }
    for (std::size_t p = 0; p < nc; ++p) {
        auto& c = b.row("out_" + idx(p), Sense::eq, 0.0);
        for (std::size_t r = 0; r < nc; ++r) {
            add(c, g[p * nc + r], 1.0);
        }
        add(c, y[p], -1.0);
    }
    for (unsigned s = 1; nc >= 4 && s < (1U << nc); ++s) {
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size < 2 || size > nc - 2) {
            continue;
        }
        auto& c = b.row("dfj_" + std::to_string(s), Sense::le, static_cast<double>(size) - 1.0);
        for (std::size_t p = 0; p < nc; ++p) {
            for (std::size_t r = 0; r < nc; ++r) {
                if (p != r && (s >> p & 1U) && (s >> r & 1U)) {
                    add(c, g[p * nc + r], 1.0);
                }
            }
        }
    }
    for (std::size_t p = 0; p < nc; ++p) {
        // M g_pp + sum y - 1 <= M
        auto& c = b.row("star_" + idx(p), Sense::le, big + 1.0);
        add(c, g[p * nc + p], big);
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, y[j], 1.0);
        }
    }
}

// Flow form of the one-center recharging model.
void problem_one_alt(MilpModel& m, const Instance& inst)
{
    Builder b(m);
    const std::size_t nc = inst.num_customers();
    const std::size_t nd = inst.num_drones();
    const Point2 center = inst.one_center();

    std::vector<std::size_t> xr(nc * nd), xo(nd * nc), xc(nc), xd(nd), xn(nd), q(nd);
    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t i = 0; i < nd; ++i) {
            xr[j * nd + i] = b.var("xr_" + idx(j, i), VarType::binary);
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        xc[j] = b.var("xc_" + idx(j), VarType::binary);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        xd[i] = b.var("xd_" + idx(i), VarType::integer);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        xn[i] = b.var("xn_" + idx(i), VarType::binary);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            xo[i * nc + j] = b.var("xo_" + idx(i, j), VarType::binary);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        q[i] = b.var("q_" + idx(i));
    }
    const std::size_t big_q = b.var("Q");
    m.objective.push_back(Term{big_q, 1.0});

    for (std::size_t j = 0; j < nc; ++j) {
        auto& c = b.row("assign_" + idx(j), Sense::eq, 1.0);
        for (std::size_t i = 0; i < nd; ++i) {
            add(c, xr[j * nd + i], 1.0);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("nodirect_" + idx(i), Sense::eq, 0.0);
        add(c, xn[i], 1.0);
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, xo[i * nc + j], 1.0);
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        add(b.row("center_" + idx(j), Sense::eq, 1.0), xc[j], 1.0);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("dflow_" + idx(i), Sense::eq, 0.0);
        add(c, xd[i], 1.0);
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, xr[j * nd + i], -1.0);
        }
    }
    {
        auto& c = b.row("cflow", Sense::eq, 0.0);
        for (std::size_t i = 0; i < nd; ++i) {
            add(c, xd[i], 1.0);
        }
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, xc[j], -1.0);
        }
    }
    auto d = [&](std::size_t i, std::size_t j) {
        return loop_length(inst.drone_bases[i], center, inst.customers[j]);
    };
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            add(b.row("range_" + idx(i, j), Sense::le, inst.range), xr[j * nd + i], d(i, j));
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("time_" + idx(i), Sense::le, 0.0);
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, xr[j * nd + i], d(i, j) / inst.drone_speed);
        }
        add(c, q[i], -1.0);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("make_" + idx(i), Sense::le, 0.0);
        add(c, q[i], 1.0);
        add(c, big_q, -1.0);
    }
}

// Flow form of the one-center revisiting model with |C| artificial drones
// (trips) per drone node and the Z/Y products linearized.
void problem_two_alt(MilpModel& m, const Instance& inst)
{
    Builder b(m);
    const std::size_t nc = inst.num_customers();
    const std::size_t nd = inst.num_drones();
    const std::size_t nk = nc * nd;
    const Point2 center = inst.one_center();

    // arcs: customer->drone, center->drone, drone->customer, center->customer,
    // drone->center, customer->center
    std::vector<std::size_t> cd(nc * nd * nk), n0(nd * nk), dc(nd * nc * nk), c0(nc * nk), d0(nd * nk),
        back(nc * nk);
    auto at3 = [](std::size_t a, std::size_t b2, std::size_t k, std::size_t nb, std::size_t nkk) {
        return (a * nb + b2) * nkk + k;
    };
    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t i = 0; i < nd; ++i) {
            for (std::size_t k = 0; k < nk; ++k) {
                cd[at3(j, i, k, nd, nk)] = b.var("xcd_" + idx(j, i, k), VarType::binary);
            }
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t k = 0; k < nk; ++k) {
            n0[i * nk + k] = b.var("x0d_" + idx(i, k), VarType::binary);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                dc[at3(i, j, k, nc, nk)] = b.var("xdc_" + idx(i, j, k), VarType::binary);
            }
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t k = 0; k < nk; ++k) {
            c0[j * nk + k] = b.var("x0c_" + idx(j, k), VarType::binary);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t k = 0; k < nk; ++k) {
            d0[i * nk + k] = b.var("xd0_" + idx(i, k), VarType::binary);
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t k = 0; k < nk; ++k) {
            back[j * nk + k] = b.var("xc0_" + idx(j, k), VarType::binary);
        }
    }
    std::vector<std::size_t> zv(nd * nc * nk), yv(nd * nc * nk), q(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                zv[at3(i, j, k, nc, nk)] = b.var("Z_" + idx(i, j, k), VarType::binary);
            }
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                yv[at3(i, j, k, nc, nk)] = b.var("Y_" + idx(i, j, k), VarType::binary);
            }
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        q[i] = b.var("q_" + idx(i));
    }
    const std::size_t big_q = b.var("Q");
    m.objective.push_back(Term{big_q, 1.0});

    auto d_i0 = [&](std::size_t i) { return dist(inst.drone_bases[i], center); };
    auto d_0j = [&](std::size_t j) { return dist(center, inst.customers[j]); };
    auto d_ji = [&](std::size_t j, std::size_t i) { return dist(inst.customers[j], inst.drone_bases[i]); };

    for (std::size_t j = 0; j < nc; ++j) {
        auto& c = b.row("assign_" + idx(j), Sense::eq, 1.0);
        for (std::size_t i = 0; i < nd; ++i) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, cd[at3(j, i, k, nd, nk)], 1.0);
            }
        }
        for (std::size_t k = 0; k < nk; ++k) {
            add(c, back[j * nk + k], 1.0);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("nodirect_" + idx(i), Sense::eq, 0.0);
        for (std::size_t k = 0; k < nk; ++k) {
            add(c, n0[i * nk + k], 1.0);
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, dc[at3(i, j, k, nc, nk)], 1.0);
            }
        }
    }
    for (std::size_t j = 0; j < nc; ++j) {
        auto& c = b.row("center_" + idx(j), Sense::eq, 1.0);
        for (std::size_t k = 0; k < nk; ++k) {
            add(c, c0[j * nk + k], 1.0);
        }
    }
    for (std::size_t k = 0; k < nk; ++k) {
        auto& c = b.row("kflow_" + idx(k), Sense::eq, 0.0);
        for (std::size_t i = 0; i < nd; ++i) {
            add(c, d0[i * nk + k], 1.0);
        }
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, back[j * nk + k], 1.0);
        }
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, c0[j * nk + k], -1.0);
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("dflow_" + idx(i), Sense::eq, 0.0);
        for (std::size_t k = 0; k < nk; ++k) {
            add(c, d0[i * nk + k], 1.0);
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, cd[at3(j, i, k, nd, nk)], -1.0);
            }
        }
    }
    {
        auto& c = b.row("cflow", Sense::eq, 0.0);
        for (std::size_t i = 0; i < nd; ++i) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, d0[i * nk + k], 1.0);
            }
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, back[j * nk + k], 1.0);
            }
        }
        for (std::size_t i = 0; i < nd; ++i) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, n0[i * nk + k], -1.0);
            }
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, c0[j * nk + k], -1.0);
            }
        }
    }
    for (std::size_t k = 0; k < nk; ++k) {
        auto& c = b.row("range_" + idx(k), Sense::le, inst.range);
        for (std::size_t i = 0; i < nd; ++i) {
            add(c, d0[i * nk + k], d_i0(i));
        }
        for (std::size_t j = 0; j < nc; ++j) {
            add(c, c0[j * nk + k], d_0j(j));
            add(c, back[j * nk + k], d_0j(j));
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t i = 0; i < nd; ++i) {
                add(c, cd[at3(j, i, k, nd, nk)], d_ji(j, i));
            }
        }
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("time_" + idx(i), Sense::le, 0.0);
        for (std::size_t k = 0; k < nk; ++k) {
            add(c, d0[i * nk + k], d_i0(i));
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, zv[at3(i, j, k, nc, nk)], d_0j(j));
                add(c, yv[at3(i, j, k, nc, nk)], d_0j(j));
            }
        }
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t k = 0; k < nk; ++k) {
                add(c, cd[at3(j, i, k, nd, nk)], d_ji(j, i));
            }
        }
        add(c, q[i], -inst.drone_speed);
    }
    for (std::size_t i = 0; i < nd; ++i) {
        auto& c = b.row("make_" + idx(i), Sense::le, 0.0);
        add(c, q[i], 1.0);
        add(c, big_q, -1.0);
    }

    // Z_ijk = x_i0k x_0jk and Y_ijk = x_i0k x_j0k
    struct Product {
        const char* tag;
        const std::vector<std::size_t>* w;
        const std::vector<std::size_t>* other;
    };
    for (const Product& pr : {Product{"Z", &zv, &c0}, Product{"Y", &yv, &back}}) {
        auto visit = [&](const char* suffix, auto emit) {
            for (std::size_t i = 0; i < nd; ++i) {
                for (std::size_t j = 0; j < nc; ++j) {
                    for (std::size_t k = 0; k < nk; ++k) {
                        emit(b, std::string(pr.tag) + suffix + "_" + idx(i, j, k), (*pr.w)[at3(i, j, k, nc, nk)],
                             d0[i * nk + k], (*pr.other)[j * nk + k]);
                    }
                }
            }
        };
        visit("both", [](Builder& bb, std::string name, std::size_t w, std::size_t a, std::size_t o) {
            auto& c = bb.row(std::move(name), Sense::ge, -1.0);
            add(c, w, 1.0);
            add(c, a, -1.0);
            add(c, o, -1.0);
        });
        visit("drone", [](Builder& bb, std::string name, std::size_t w, std::size_t a, std::size_t) {
            auto& c = bb.row(std::move(name), Sense::le, 0.0);
            add(c, w, 1.0);
            add(c, a, -1.0);
        });
        visit("cust", [](Builder& bb, std::string name, std::size_t w, std::size_t, std::size_t o) {
            auto& c = bb.row(std::move(name), Sense::le, 0.0);
            add(c, w, 1.0);
            add(c, o, -1.0);
        });
    }
}

}  // namespace

MilpModel export_milp(const Instance& inst, Problem problem, std::size_t max_visits, std::size_t subtour_limit)
{
    inst.validate();
    if ((problem == Problem::III || problem == Problem::IV) && inst.num_customers() > subtour_limit) {
        throw Error(ErrorCode::too_large, "subtour rows are enumerated in full; at most "
                                              + std::to_string(subtour_limit) + " customers");
    }
    if (max_visits == 0) {
        throw Error(ErrorCode::invalid_input, "max_visits must be at least 1");
    }
    MilpModel m;
    m.name = std::string("tspsd_") + to_string(problem);
    m.big_m = big_m(inst);
    switch (problem) {
    case Problem::I: problem_one(m, inst); break;
    case Problem::II: problem_two(m, inst, max_visits); break;
    case Problem::III: problem_multi(m, inst, false, max_visits); break;
    case Problem::IV: problem_multi(m, inst, true, max_visits); break;
    case Problem::I_alt: problem_one_alt(m, inst); break;
    case Problem::II_alt: problem_two_alt(m, inst); break;
    }
    return m;
}

}  // namespace tspsd
