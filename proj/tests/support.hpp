#pragma once

// Helpers shared by the test binaries. The reference solvers in here are
// deliberately naive so they can serve as independent oracles.

#include "tspsd/core.hpp"
#include "tspsd/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace testing {

using tspsd::Instance;
using tspsd::Point2;

inline Instance random_instance(std::uint64_t seed, std::size_t nc, std::size_t nd, double range,
                                double drone_speed = 2.0)
{
    tspsd::Rng rng(seed);
    Instance inst;
    for (std::size_t i = 0; i < nc; ++i) {
        inst.customers.push_back({rng.uniform(), rng.uniform()});
    }
    for (std::size_t i = 0; i < nd; ++i) {
        inst.drone_bases.push_back({rng.uniform(), rng.uniform()});
    }
    inst.truck_speed = 1.0;
    inst.drone_speed = drone_speed;
    inst.range = range;
    return inst;
}

// Pinned instance behind the golden LP files.
inline Instance golden_instance()
{
    Instance inst;
    inst.customers = {{0.2, 0.3}, {0.5, 0.25}, {0.45, 0.6}, {0.7, 0.5}};
    inst.drone_bases = {{0.3, 0.45}, {0.6, 0.4}};
    inst.truck_speed = 1.0;
    inst.drone_speed = 2.0;
    inst.range = 0.8;
    inst.center = Point2{0.45, 0.4};
    return inst;
}

inline double euclid(Point2 a, Point2 b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Shortest closed tour by trying every permutation.
inline double naive_tour(const std::vector<Point2>& pts)
{
    if (pts.size() <= 1) {
        return 0.0;
    }
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double len = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            len += euclid(pts[perm[i]], pts[perm[(i + 1) % perm.size()]]);
        }
        best = std::min(best, len);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

/// Multi-center recharging optimum by plain enumeration: every customer is
/// either a truck stop or given to one drone, every busy drone picks a
/// stop. No bounds, no memo.
inline double naive_multi_recharging(const Instance& inst)
{
    const std::size_t nc = inst.customers.size();
    const std::size_t nd = inst.drone_bases.size();
    const std::size_t labels = nd + 1;  // 0 = truck, d + 1 = drone d
    std::size_t combos = 1;
    for (std::size_t i = 0; i < nc; ++i) {
        combos *= labels;
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> label(nc);
    for (std::size_t code = 0; code < combos; ++code) {
        std::size_t rest = code;
        std::vector<std::size_t> stops;
        for (std::size_t c = 0; c < nc; ++c) {
            label[c] = rest % labels;
            rest /= labels;
            if (label[c] == 0) {
                stops.push_back(c);
            }
        }
        if (stops.empty()) {
            continue;
        }
        std::vector<Point2> stop_pts;
        for (std::size_t s : stops) {
            stop_pts.push_back(inst.customers[s]);
        }
        const double truck = naive_tour(stop_pts) / inst.truck_speed;

        std::vector<std::size_t> busy;
        for (std::size_t d = 0; d < nd; ++d) {
            for (std::size_t c = 0; c < nc; ++c) {
                if (label[c] == d + 1) {
                    busy.push_back(d);
                    break;
                }
            }
        }
        std::size_t center_combos = 1;
        for (std::size_t k = 0; k < busy.size(); ++k) {
            center_combos *= stops.size();
        }
        for (std::size_t cc = 0; cc < center_combos; ++cc) {
            std::size_t r = cc;
            std::vector<double> q(stops.size(), 0.0);
            bool ok = true;
            for (std::size_t d : busy) {
                const std::size_t p = r % stops.size();
                r /= stops.size();
                const Point2 center = inst.customers[stops[p]];
                const Point2 base = inst.drone_bases[d];
                double total = 0.0;
                double far = 0.0;
                for (std::size_t c = 0; c < nc; ++c) {
                    if (label[c] != d + 1) {
                        continue;
                    }
                    const Point2 z = inst.customers[c];
                    const double loop = euclid(base, center) + euclid(center, z) + euclid(z, base);
                    if (loop > inst.range + 1e-9) {
                        ok = false;
                    }
                    total += loop;
                    far = std::max(far, euclid(z, base));
                }
                q[p] = std::max(q[p], (total - far) / inst.drone_speed);
            }
            if (!ok) {
                continue;
            }
            double obj = truck;
            for (double v : q) {
                obj += v;
            }
            best = std::min(best, obj);
        }
    }
    return best;
}

// Best time of one drone for a set of customers: every order, every cut into
// consecutive trips, the trip with the longest home leg flown last.
inline double naive_drone_time(const Instance& inst, Point2 center, std::size_t drone, std::vector<std::size_t> set,
                        tspsd::Mode mode)
{
    if (set.empty()) {
        return 0.0;
    }
    const Point2 base = inst.drone_bases[drone];
    std::sort(set.begin(), set.end());
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = set.size();
    do {
        // bit t set: a trip ends after position t; recharging cuts everywhere
        const unsigned every = (1U << (m - 1)) - 1;
        const unsigned lo = mode == tspsd::Mode::recharging ? every : 0;
        for (unsigned mask = lo; mask <= every; ++mask) {
            double total = 0.0;
            double far = 0.0;
            bool ok = true;
            double trip = euclid(base, center);
            for (std::size_t t = 0; t < m; ++t) {
                const Point2 z = inst.customers[set[t]];
                const bool ends = t + 1 == m || (mask >> t & 1U);
                if (ends) {
                    trip += euclid(center, z) + euclid(z, base);
                    ok = ok && trip <= inst.range + 1e-9;
                    total += trip;
                    far = std::max(far, euclid(z, base));
                    trip = euclid(base, center);
                } else {
                    trip += 2.0 * euclid(center, z);
                }
            }
            if (ok) {
                best = std::min(best, (total - far) / inst.drone_speed);
            }
        }
    } while (std::next_permutation(set.begin(), set.end()));
    return best;
}

inline double naive_cluster_optimum(const Instance& inst, Point2 center, tspsd::Mode mode)
{
    const std::size_t nc = inst.num_customers();
    const std::size_t nd = inst.num_drones();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < nc; ++i) {
        combos *= nd;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t code = 0; code < combos; ++code) {
        std::vector<std::vector<std::size_t>> sets(nd);
        std::size_t r = code;
        for (std::size_t c = 0; c < nc; ++c) {
            sets[r % nd].push_back(c);
            r /= nd;
        }
        double span = 0.0;
        for (std::size_t d = 0; d < nd; ++d) {
            span = std::max(span, naive_drone_time(inst, center, d, sets[d], mode));
        }
        best = std::min(best, span);
    }
    return best;
}

inline double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double mean(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace testing
