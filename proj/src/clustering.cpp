#include "tspsd/clustering.hpp"

#include "tspsd/random.hpp"

#include <algorithm>
#include <cmath>

namespace tspsd {

namespace {

double sq(double v)
{
    return v * v;
}

double sq_dist(Point2 a, Point2 b)
{
    return sq(a.x - b.x) + sq(a.y - b.y);
}

std::vector<Point2> seed_centers(std::span<const Point2> points, std::size_t k, Rng& rng)
{
    std::vector<Point2> centers;
    centers.reserve(k);
    centers.push_back(points[rng.index(points.size())]);

    std::vector<double> d2(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        d2[i] = sq_dist(points[i], centers[0]);
    }
    while (centers.size() < k) {
        double total = 0.0;
        for (double v : d2) {
            total += v;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            pick = points.size() - 1;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (d2[i] <= 0.0) {
                    continue;
                }
                target -= d2[i];
                if (target < 0.0) {
                    pick = i;
                    break;
                }
            }
            while (d2[pick] <= 0.0) {  // rounding landed on a taken point
                pick = (pick + points.size() - 1) % points.size();
            }
        }
        centers.push_back(points[pick]);
        for (std::size_t i = 0; i < points.size(); ++i) {
            d2[i] = std::min(d2[i], sq_dist(points[i], centers.back()));
        }
    }
    return centers;
}

}  // namespace

std::size_t nearest_center(Point2 p, std::span<const Point2> centers) noexcept
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = sq_dist(p, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double kmeans_cost(std::span<const Point2> points, std::span<const Point2> centers) noexcept
{
    double cost = 0.0;
    for (const auto& p : points) {
        cost += sq_dist(p, centers[nearest_center(p, centers)]);
    }
    return cost;
}

double covering_radius(std::span<const Point2> points, std::span<const Point2> centers) noexcept
{
    double r = 0.0;
    for (const auto& p : points) {
        r = std::max(r, dist(p, centers[nearest_center(p, centers)]));
    }
    return r;
}

std::vector<Point2> lloyd(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                          std::size_t max_iter, double tol, std::vector<double>* trace)
{
    if (k == 0 || k > points.size()) {
        throw Error(ErrorCode::invalid_k, "k must lie in [1, number of points]");
    }
    Rng rng(seed);
    auto centers = seed_centers(points, k, rng);

    std::vector<std::size_t> label(points.size());
    std::vector<Point2> sum(k);
    std::vector<std::size_t> count(k);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            label[i] = nearest_center(points[i], centers);
        }
        std::fill(sum.begin(), sum.end(), Point2{});
        std::fill(count.begin(), count.end(), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            sum[label[i]].x += points[i].x;
            sum[label[i]].y += points[i].y;
            ++count[label[i]];
        }

        auto next = centers;
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] > 0) {
                const auto n = static_cast<double>(count[c]);
                next[c] = {sum[c].x / n, sum[c].y / n};
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] > 0) {
                continue;
            }
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                const double d = sq_dist(points[i], next[nearest_center(points[i], next)]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            next[c] = points[far];
        }

        double moved = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            moved = std::max(moved, dist(next[c], centers[c]));
        }
        centers = std::move(next);
        if (trace) {
            trace->push_back(kmeans_cost(points, centers));
        }
        if (moved < tol) {
            break;
        }
    }
    return centers;
}

Clustering voronoi_assign(const Instance& inst, std::span<const Point2> centers)
{
    if (centers.empty()) {
        throw Error(ErrorCode::invalid_input, "voronoi_assign needs at least one center");
    }
    const double radius = inst.range / 4.0;
    auto assign = [&](Point2 p) {
        const std::size_t c = nearest_center(p, centers);
        return dist(p, centers[c]) < radius ? c : kUnassigned;
    };

    Clustering out;
    out.k = centers.size();
    out.centers.assign(centers.begin(), centers.end());
    out.customer_assignment.reserve(inst.num_customers());
    for (const auto& p : inst.customers) {
        out.customer_assignment.push_back(assign(p));
    }
    out.drone_assignment.reserve(inst.num_drones());
    for (const auto& p : inst.drone_bases) {
        out.drone_assignment.push_back(assign(p));
    }
    return out;
}

Clustering min_feasible_k(const Instance& inst, std::uint64_t seed, std::size_t restarts)
{
    const auto& pts = inst.customers;
    const std::size_t n = pts.size();
    const double radius = inst.range / 4.0;
    restarts = std::max<std::size_t>(restarts, 1);

    // Restart seeds depend on (seed, k, r) only, so feasibility of a given k
    // does not depend on L and the search result is monotone in L.
    auto best_feasible = [&](std::size_t k) -> std::optional<std::vector<Point2>> {
        if (k == n) {
            return std::vector<Point2>(pts.begin(), pts.end());
        }
        std::optional<std::vector<Point2>> best;
        double best_cost = 0.0;
        for (std::size_t r = 0; r < restarts; ++r) {
            auto centers = lloyd(pts, k, mix_seed(seed, k * restarts + r));
            if (covering_radius(pts, centers) > radius) {
                continue;
            }
            const double cost = kmeans_cost(pts, centers);
            if (!best || cost < best_cost) {
                best_cost = cost;
                best = std::move(centers);
            }
        }
        return best;
    };

    std::size_t lo = 1;
    std::size_t hi = n;
    auto chosen = *best_feasible(n);
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (auto found = best_feasible(mid)) {
            hi = mid;
            chosen = std::move(*found);
        } else {
            lo = mid + 1;
        }
    }
    return voronoi_assign(inst, chosen);
}

}  // namespace tspsd
