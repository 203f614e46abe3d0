#include "tspsd/tsp.hpp"

#include "tspsd/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tspsd {

namespace {

constexpr double kImprove = 1e-12;

class LocalSearch {
public:
    LocalSearch(std::span<const Point2> pts, std::vector<std::size_t> order)
        : pts_(pts), t_(std::move(order))
    {
    }

    std::vector<std::size_t> run()
    {
        bool improved = true;
        while (improved) {
            improved = two_opt();
            improved = or_opt() || improved;
        }
        return std::move(t_);
    }

private:
    double d(std::size_t a, std::size_t b) const { return dist(pts_[t_[a]], pts_[t_[b]]); }

    bool two_opt()
    {
        const std::size_t n = t_.size();
        bool any = false;
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i + 2 < n; ++i) {
                for (std::size_t j = i + 2; j < n; ++j) {
                    if (i == 0 && j == n - 1) {
                        continue;
                    }
                    const std::size_t jn = (j + 1) % n;
                    const double delta = d(i, j) + d(i + 1, jn) - d(i, i + 1) - d(j, jn);
                    if (delta < -kImprove) {
                        std::reverse(t_.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                     t_.begin() + static_cast<std::ptrdiff_t>(j + 1));
                        improved = any = true;
                    }
                }
            }
        }
        return any;
    }

    // Moves t[i..i+len) between positions j and j+1 of the remaining cycle.
    bool or_opt()
    {
        const std::size_t n = t_.size();
        bool any = false;
        for (std::size_t len = 1; len <= 3 && len + 2 <= n; ++len) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t i = 0; i < n && !improved; ++i) {
                    const std::size_t prev = (i + n - 1) % n;
                    const std::size_t first = i;
                    const std::size_t last = (i + len - 1) % n;
                    const std::size_t next = (i + len) % n;
                    const double removed = d(prev, first) + d(last, next) - d(prev, next);
                    for (std::size_t step = 1; step + len < n && !improved; ++step) {
                        const std::size_t a = (next + step - 1) % n;
                        const std::size_t b = (a + 1) % n;
                        const double keep = d(a, first) + d(last, b) - d(a, b);
                        const double flip = d(a, last) + d(first, b) - d(a, b);
                        const bool reversed = flip < keep;
                        if (std::min(keep, flip) - removed < -kImprove) {
                            move_segment(i, len, a, reversed);
                            improved = any = true;
                        }
                    }
                }
            }
        }
        return any;
    }

    void move_segment(std::size_t i, std::size_t len, std::size_t after, bool reversed)
    {
        const std::size_t n = t_.size();
        std::vector<std::size_t> seg;
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < len; ++s) {
            seg.push_back(t_[(i + s) % n]);
        }
        if (reversed) {
            std::reverse(seg.begin(), seg.end());
        }
        const std::size_t anchor = t_[after];
        for (std::size_t s = 0; s < n - len; ++s) {
            rest.push_back(t_[(i + len + s) % n]);
        }
        std::vector<std::size_t> out;
        out.reserve(n);
        for (std::size_t v : rest) {
            out.push_back(v);
            if (v == anchor) {
                out.insert(out.end(), seg.begin(), seg.end());
            }
        }
        t_ = std::move(out);
    }

    std::span<const Point2> pts_;
    std::vector<std::size_t> t_;
};

std::vector<std::size_t> nearest_neighbour(std::span<const Point2> pts, std::size_t start)
{
    const std::size_t n = pts.size();
    std::vector<bool> used(n, false);
    std::vector<std::size_t> order{start};
    used[start] = true;
    while (order.size() < n) {
        const Point2 from = pts[order.back()];
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < n; ++v) {
            if (!used[v] && dist(from, pts[v]) < best_d) {
                best_d = dist(from, pts[v]);
                best = v;
            }
        }
        used[best] = true;
        order.push_back(best);
    }
    return order;
}

// Double bridge: A B C D -> A C B D with three random cuts.
std::vector<std::size_t> double_bridge(const std::vector<std::size_t>& t, Rng& rng)
{
    const std::size_t n = t.size();
    std::size_t cut[3];
    do {
        for (auto& c : cut) {
            c = 1 + rng.index(n - 1);
        }
        std::sort(cut, cut + 3);
    } while (cut[0] == cut[1] || cut[1] == cut[2]);
    std::vector<std::size_t> out(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(cut[0]));
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(cut[1]), t.begin() + static_cast<std::ptrdiff_t>(cut[2]));
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(cut[0]), t.begin() + static_cast<std::ptrdiff_t>(cut[1]));
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(cut[2]), t.end());
    return out;
}

Tour trivial_tour(std::span<const Point2> points)
{
    Tour t;
    t.order.resize(points.size());
    std::iota(t.order.begin(), t.order.end(), std::size_t{0});
    t.length = tour_length(points, t.order);
    return t;
}

}  // namespace

double tour_length(std::span<const Point2> points, std::span<const std::size_t> order) noexcept
{
    if (order.size() <= 1) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        total += dist(points[order[i]], points[order[i + 1]]);
    }
    return total + dist(points[order.back()], points[order.front()]);
}

Tour lk_tour(std::span<const Point2> points, std::uint64_t seed, std::size_t restarts)
{
    if (points.empty()) {
        throw Error(ErrorCode::invalid_input, "tour over an empty point set");
    }
    if (points.size() <= 3) {
        return trivial_tour(points);
    }
    Rng rng(seed);
    Tour best;
    best.length = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        const std::size_t start = r == 0 ? 0 : rng.index(points.size());
        auto order = LocalSearch(points, nearest_neighbour(points, start)).run();
        const double len = tour_length(points, order);
        if (len < best.length) {
            best.length = len;
            best.order = std::move(order);
        }
    }
    // kicks from the incumbent; only strict improvements are kept
    const std::size_t kicks = std::max<std::size_t>(30, 2 * points.size());
    for (std::size_t k = 0; k < kicks; ++k) {
        auto order = LocalSearch(points, double_bridge(best.order, rng)).run();
        const double len = tour_length(points, order);
        if (len < best.length - kImprove) {
            best.length = len;
            best.order = std::move(order);
        }
    }
    return best;
}

Tour exact_tour(std::span<const Point2> points)
{
    if (points.empty()) {
        throw Error(ErrorCode::invalid_input, "tour over an empty point set");
    }
    if (points.size() > kExactTourLimit) {
        throw Error(ErrorCode::too_large, "exact tour limited to " + std::to_string(kExactTourLimit)
                                              + " points");
    }
    if (points.size() <= 3) {
        return trivial_tour(points);
    }
    std::vector<std::size_t> perm(points.size() - 1);
    std::iota(perm.begin(), perm.end(), std::size_t{1});
    Tour best;
    best.length = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> order(points.size());
    order[0] = 0;
    do {
        if (perm.front() > perm.back()) {
            continue;
        }
        std::copy(perm.begin(), perm.end(), order.begin() + 1);
        const double len = tour_length(points, order);
        if (len < best.length) {
            best.length = len;
            best.order = order;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool is_two_opt_optimal(std::span<const Point2> points, const Tour& tour, double tol)
{
    const auto& t = tour.order;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            const std::size_t jn = (j + 1) % n;
            const double delta = dist(points[t[i]], points[t[j]]) + dist(points[t[i + 1]], points[t[jn]])
                                 - dist(points[t[i]], points[t[i + 1]]) - dist(points[t[j]], points[t[jn]]);
            if (delta < -tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace tspsd
