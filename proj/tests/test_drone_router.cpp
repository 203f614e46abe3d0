#include "support.hpp"

#include "tspsd/drone_router.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace tspsd;

namespace {

Cluster whole_cluster(const Instance& inst, Point2 center)
{
    Cluster c;
    c.center = center;
    c.customers.resize(inst.num_customers());
    std::iota(c.customers.begin(), c.customers.end(), std::size_t{0});
    c.drones.resize(inst.num_drones());
    std::iota(c.drones.begin(), c.drones.end(), std::size_t{0});
    return c;
}

// Five customers and four drones around a center, loosely the layout of the
// worked encoding example.
Instance example_instance()
{
    Instance inst;
    inst.customers = {{0.40, 0.62}, {0.58, 0.60}, {0.62, 0.45}, {0.45, 0.38}, {0.35, 0.50}};
    inst.drone_bases = {{0.30, 0.65}, {0.65, 0.66}, {0.60, 0.35}, {0.36, 0.36}};
    inst.drone_speed = 2.0;
    inst.range = 1.0;
    return inst;
}

void check_cover(const std::vector<DroneTrip>& trips, const Cluster& cluster, const Instance& inst)
{
    std::vector<std::size_t> seen;
    for (const auto& t : trips) {
        CHECK(t.center == cluster.center);
        CHECK(trip_length(t, inst) <= inst.range + kLengthTol);
        seen.insert(seen.end(), t.visits.begin(), t.visits.end());
    }
    std::sort(seen.begin(), seen.end());
    auto want = cluster.customers;
    std::sort(want.begin(), want.end());
    CHECK(seen == want);
}

}  // namespace

TEST_CASE("labels")
{
    const Instance inst = example_instance();
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    CHECK(center_label() == 1);
    CHECK(customer_label(c, 0) == 2);
    CHECK(customer_label(c, 4) == 6);
    CHECK(drone_label(c, 0) == 7);
    CHECK(drone_label(c, 3) == 10);
}

TEST_CASE("decode the worked example")
{
    const Instance inst = example_instance();
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    const EncodedSolution sol{{8, 1, 5, 7, 1, 2, 9, 1, 3, 10, 1, 4, 9, 1, 6}, Mode::recharging};
    const auto trips = decode(sol, c);
    REQUIRE(trips.size() == 5);
    std::vector<std::size_t> of_drone_2;
    for (const auto& t : trips) {
        CHECK(t.visits.size() == 1);
        if (t.drone == 2) {
            of_drone_2.push_back(t.visits[0]);
        }
    }
    // labels 3 and 6 are local customers 1 and 4, in that order
    CHECK(of_drone_2 == std::vector<std::size_t>{1, 4});
    CHECK(encode(trips, c, Mode::recharging) == sol);
}

TEST_CASE("decode single trips and revisits")
{
    Instance inst;
    inst.customers = {{0.5, 0.6}};
    inst.drone_bases = {{0.4, 0.4}};
    inst.range = 2.0;
    const Cluster one = whole_cluster(inst, {0.5, 0.5});
    const auto trips = decode(EncodedSolution{{3, 1, 2}, Mode::recharging}, one);
    REQUIRE(trips.size() == 1);
    CHECK(trips[0].drone == 0);
    CHECK(trips[0].visits == std::vector<std::size_t>{0});

    const Instance ex = example_instance();
    const Cluster c = whole_cluster(ex, {0.5, 0.5});
    // drone 9 chains customers 3 and 6 without flying home in between
    const EncodedSolution rev{{8, 1, 2, 1, 4, 1, 5, 9, 1, 3, 1, 6}, Mode::revisiting};
    const auto chained = decode(rev, c);
    REQUIRE(chained.size() == 2);
    CHECK(chained[1].drone == 2);
    CHECK(chained[1].visits == std::vector<std::size_t>{1, 4});
    CHECK(chained[1].mode == Mode::revisiting);
    CHECK(encode(chained, c, Mode::revisiting) == rev);
}

TEST_CASE("decode rejects malformed streams")
{
    const Instance inst = example_instance();
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    auto code_of = [&](std::vector<int> tokens, Mode mode) {
        try {
            decode(EncodedSolution{std::move(tokens), mode}, c);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::io;
    };
    CHECK(code_of({8, 1}, Mode::recharging) == ErrorCode::decode_error);
    CHECK(code_of({8, 2, 5}, Mode::recharging) == ErrorCode::decode_error);
    CHECK(code_of({8, 1, 5, 7, 1, 2, 9, 1, 3, 10, 1, 4}, Mode::recharging) == ErrorCode::decode_error);
    CHECK(code_of({8, 1, 5, 7, 1, 2, 9, 1, 3, 10, 1, 4, 9, 1, 4}, Mode::recharging) == ErrorCode::decode_error);
    CHECK(code_of({8, 1, 2, 1, 3, 7, 1, 4, 1, 5, 1, 6}, Mode::recharging) == ErrorCode::decode_error);
    CHECK(code_of({11, 1, 2, 7, 1, 3, 7, 1, 4, 7, 1, 5, 7, 1, 6}, Mode::recharging) == ErrorCode::decode_error);
}

TEST_CASE("cluster cost")
{
    Instance inst;
    inst.customers = {{0.0, 0.4}, {0.0, -0.5}};
    inst.drone_bases = {{0.3, 0.0}, {0.0, 0.0}};
    inst.drone_speed = 1.0;
    inst.range = 3.0;
    // 0.3 + 0.4 + 0.5 = 1.2 with a 0.5 home leg
    const std::vector<DroneTrip> one{DroneTrip{0, {0, 0}, {0}, Mode::recharging}};
    CHECK(cluster_cost(one, inst) == doctest::Approx(0.7).epsilon(1e-12));

    // second drone: center = base, 0 + 0.5 + 0.5 minus 0.5 = 0.5, and a
    // second trip to customer 0: 0 + 0.4 + 0.4 more, final leg 0.4
    const std::vector<DroneTrip> two{DroneTrip{0, {0, 0}, {0}, Mode::recharging},
                                     DroneTrip{1, {0, 0}, {1}, Mode::recharging},
                                     DroneTrip{1, {0, 0}, {0}, Mode::recharging}};
    CHECK(cluster_cost(two, inst) == doctest::Approx(std::max(0.7, 1.0 + 0.8 - 0.4)).epsilon(1e-12));

    CHECK(cluster_cost(std::vector<DroneTrip>{}, inst) == 0.0);

    Instance tight = inst;
    tight.range = 1.0;
    CHECK_THROWS_AS(cluster_cost(one, tight), Error);
}

TEST_CASE("action and tabu list sizes")
{
    const Instance inst = example_instance();
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    CHECK(action_list_size(c) == 10 + 4);
    CHECK(tabu_list_size(c, TabuParams{}) == 9);  // floor(0.7 * 14)
}

TEST_CASE("tabu: single feasible solution")
{
    Instance inst;
    inst.customers = {{0.0, 0.4}};
    inst.drone_bases = {{0.3, 0.0}};
    inst.drone_speed = 1.0;
    inst.range = 2.0;
    const Cluster c = whole_cluster(inst, {0.0, 0.0});
    for (Mode mode : {Mode::recharging, Mode::revisiting}) {
        const auto r = tabu_search(inst, c, mode, TabuParams{}, 0);
        CHECK(r.cost == doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("tabu: symmetric pair matches enumeration")
{
    Instance inst;
    inst.customers = {{0.4, 0.5}, {0.6, 0.5}};
    inst.drone_bases = {{0.4, 0.3}, {0.6, 0.3}};
    inst.drone_speed = 1.5;
    inst.range = 1.0;
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    for (Mode mode : {Mode::recharging, Mode::revisiting}) {
        const auto r = tabu_search(inst, c, mode, TabuParams{}, 3);
        CHECK(r.cost == doctest::Approx(testing::naive_cluster_optimum(inst, c.center, mode)).epsilon(1e-12));
    }
}

TEST_CASE("tabu: no worse than the worked example encoding")
{
    const Instance inst = example_instance();
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    const EncodedSolution sol{{8, 1, 5, 7, 1, 2, 9, 1, 3, 10, 1, 4, 9, 1, 6}, Mode::recharging};
    const double illustrated = cluster_cost(decode(sol, c), inst);
    const auto r = tabu_search(inst, c, Mode::recharging, TabuParams{}, 1);
    CHECK(r.cost <= illustrated + 1e-12);
}

TEST_CASE("tabu: output properties")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        Instance inst = testing::random_instance(300 + s, 9, 4, 1.2, 2.0);
        const Cluster c = whole_cluster(inst, {0.5, 0.5});
        for (Mode mode : {Mode::recharging, Mode::revisiting}) {
            TabuResult r;
            try {
                r = tabu_search(inst, c, mode, TabuParams{200, 0.7}, s);
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::infeasible_cluster);
                continue;
            }
            check_cover(r.trips, c, inst);
            CHECK(decode(r.solution, c) == r.trips);
            CHECK(r.cost == doctest::Approx(cluster_cost(r.trips, inst)).epsilon(1e-12));
            REQUIRE(r.best_trace.size() <= 200);
            for (std::size_t i = 1; i < r.best_trace.size(); ++i) {
                CHECK(r.best_trace[i] <= r.best_trace[i - 1]);
            }
            const auto again = tabu_search(inst, c, mode, TabuParams{200, 0.7}, s);
            CHECK(again.solution == r.solution);
        }
    }
}

TEST_CASE("tabu: unreachable customer")
{
    Instance inst;
    inst.customers = {{0.5, 0.55}, {0.9, 0.9}};
    inst.drone_bases = {{0.5, 0.45}};
    inst.range = 0.5;
    const Cluster c = whole_cluster(inst, {0.5, 0.5});
    try {
        tabu_search(inst, c, Mode::recharging, TabuParams{}, 0);
        FAIL("expected infeasible_cluster");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::infeasible_cluster);
    }
}

TEST_CASE("tabu: optimal on small clusters")
{
    for (Mode mode : {Mode::recharging, Mode::revisiting}) {
        std::size_t trials = 0, optimal = 0, beaten = 0;
        for (std::uint64_t s = 0; trials < 100; ++s) {
            const std::size_t nc = 2 + s % 3;
            const std::size_t nd = 1 + (s / 3) % 3;
            const Instance inst = testing::random_instance(5000 + s, nc, nd, 1.0, 2.0);
            const Cluster c = whole_cluster(inst, {0.5, 0.5});
            const double opt = testing::naive_cluster_optimum(inst, c.center, mode);
            if (!std::isfinite(opt)) {
                continue;
            }
            TabuResult r;
            try {
                r = tabu_search(inst, c, mode, TabuParams{}, s);
            } catch (const Error&) {
                continue;  // a customer no single drone reaches, nothing to compare
            }
            ++trials;
            optimal += r.cost <= opt + 1e-9 ? 1 : 0;
            beaten += r.cost < opt - 1e-9 ? 1 : 0;
        }
        INFO("mode " << to_string(mode) << ": " << optimal << "/" << trials);
        CHECK(optimal >= 95);
        CHECK(beaten == 0);
    }
}

TEST_CASE("enumerate routes")
{
    Instance inst;
    inst.customers = {{0.5, 0.6}, {0.6, 0.5}, {0.4, 0.5}};
    inst.drone_bases = {{0.5, 0.4}};
    inst.range = 0.01;
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(enumerate_routes(inst, all, {0.5, 0.5}, 0, Mode::recharging).empty());

    inst.range = 2.0;
    const auto rech = enumerate_routes(inst, all, {0.5, 0.5}, 0, Mode::recharging);
    CHECK(rech.size() == 3);
    for (const auto& t : rech) {
        CHECK(t.visits.size() == 1);
    }

    const std::vector<std::size_t> pair{0, 1};
    const auto rev = enumerate_routes(inst, pair, {0.5, 0.5}, 0, Mode::revisiting);
    CHECK(rev.size() == 4);  // two singles, both orders of the pair

    // count by hand over all ordered subsets with at most 3 visits
    inst.range = 0.75;
    const auto capped = enumerate_routes(inst, all, {0.5, 0.5}, 0, Mode::revisiting, 3);
    std::size_t want = 0;
    std::vector<std::size_t> perm{0, 1, 2};
    for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < 3; ++i) {
            if (mask >> i & 1U) {
                sub.push_back(i);
            }
        }
        do {
            const DroneTrip t{0, {0.5, 0.5}, sub, Mode::revisiting};
            want += trip_length(t, inst) <= inst.range + 1e-9 ? 1 : 0;
        } while (std::next_permutation(sub.begin(), sub.end()));
    }
    CHECK(capped.size() == want);
    CHECK(enumerate_routes(inst, all, {0.5, 0.5}, 0, Mode::revisiting, 1).size() <= 3);
}
