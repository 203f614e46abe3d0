#include "support.hpp"

#include "tspsd/core.hpp"

#include <doctest.h>

#include <cmath>

using namespace tspsd;

namespace {

Instance line_instance()
{
    Instance inst;
    inst.customers = {{0.0, 0.0}, {0.0, 0.4}};
    inst.drone_bases = {{0.3, 0.0}};
    inst.truck_speed = 1.0;
    inst.drone_speed = 1.0;
    inst.range = 2.0;
    return inst;
}

Plan one_center_plan()
{
    Plan plan;
    plan.truck_stops = {{{0.0, 0.0}, 0}};
    plan.truck_served = {0};
    plan.drone_trips = {DroneTrip{0, {0.0, 0.0}, {1}, Mode::recharging}};
    return plan;
}

}  // namespace

TEST_CASE("dist")
{
    CHECK(dist({0, 0}, {3, 4}) == 5.0);
    CHECK(dist({0.5, 0.5}, {0.5, 0.5}) == 0.0);
    CHECK(dist({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("closed tour length")
{
    const std::vector<Point2> one{{0.2, 0.2}};
    const std::vector<Point2> two{{0, 0}, {0, 0.5}};
    const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(closed_tour_length(one) == 0.0);
    CHECK(closed_tour_length(two) == 1.0);
    CHECK(closed_tour_length(square) == 4.0);
}

TEST_CASE("trip length and last leg")
{
    Instance inst;
    inst.customers = {{3, 4}, {1, 1}, {2, 0}};
    inst.drone_bases = {{0, 0}};
    inst.range = 100.0;

    const DroneTrip single{0, {3, 0}, {0}, Mode::recharging};
    CHECK(trip_length(single, inst) == 12.0);
    CHECK(last_leg(single, inst) == 5.0);

    // 1 + (1 + 1) + 1 + 2 by hand
    const DroneTrip chained{0, {1, 0}, {1, 2}, Mode::revisiting};
    CHECK(trip_length(chained, inst) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(last_leg(chained, inst) == 2.0);

    Instance same;
    same.customers = {{0.4, 0.4}};
    same.drone_bases = {{0.4, 0.4}};
    const DroneTrip degenerate{0, {0.4, 0.4}, {0}, Mode::recharging};
    CHECK(trip_length(degenerate, same) == 0.0);
    CHECK(last_leg(degenerate, same) == 0.0);

    const DroneTrip empty{0, {1, 0}, {}, Mode::revisiting};
    CHECK_THROWS_AS(trip_length(empty, inst), Error);
    try {
        last_leg(empty, inst);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_trip);
    }
    const DroneTrip two_in_recharging{0, {1, 0}, {1, 2}, Mode::recharging};
    CHECK_THROWS_AS(trip_length(two_in_recharging, inst), Error);
}

TEST_CASE("loop length matches the recharging trip")
{
    const Instance inst = testing::random_instance(11, 6, 3, 5.0);
    for (std::size_t d = 0; d < 3; ++d) {
        for (std::size_t c = 0; c < 6; ++c) {
            const Point2 center = inst.customers[(c + 1) % 6];
            const DroneTrip t{d, center, {c}, Mode::recharging};
            CHECK(loop_length(inst.drone_bases[d], center, inst.customers[c]) == trip_length(t, inst));
        }
    }
}

TEST_CASE("evaluate: single truck customer")
{
    Instance inst;
    inst.customers = {{0.3, 0.7}};
    inst.range = 1.0;
    Plan plan;
    plan.truck_stops = {{{0.3, 0.7}, 0}};
    plan.truck_served = {0};
    const auto ev = evaluate(plan, inst);
    CHECK(ev.objective == 0.0);
    CHECK(ev.truck_time == 0.0);
}

TEST_CASE("evaluate: last leg deduction")
{
    const Instance inst = line_instance();
    const Plan plan = one_center_plan();
    // q = 0.3 + 0.4 + 0.5, the final 0.5 home leg is not waited for
    const auto ev = evaluate(plan, inst);
    CHECK(ev.objective == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(ev.cluster_times.size() == 1);
    CHECK(ev.cluster_times[0] == doctest::Approx(0.7).epsilon(1e-12));

    const auto full = evaluate(plan, inst, Deduction::none);
    CHECK(full.objective == doctest::Approx(1.2).epsilon(1e-12));

    // evaluate is pure
    const auto again = evaluate(plan, inst);
    CHECK(again.objective == ev.objective);
    CHECK(again.cluster_times == ev.cluster_times);
}

TEST_CASE("evaluate: makespan, truck time and speeds")
{
    Instance inst;
    inst.customers = {{0, 0}, {1, 0}, {0, 0.2}, {0, 0.3}, {1, 0.2}};
    inst.drone_bases = {{0.1, 0}, {0.2, 0}, {1, 0.1}};
    inst.truck_speed = 2.0;
    inst.drone_speed = 4.0;
    inst.range = 3.0;
    Plan plan;
    plan.truck_stops = {{{0, 0}, 0}, {{1, 0}, 1}};
    plan.truck_served = {0, 1};
    plan.drone_trips = {
        DroneTrip{0, {0, 0}, {2}, Mode::recharging},
        DroneTrip{1, {0, 0}, {3}, Mode::recharging},
        DroneTrip{2, {1, 0}, {4}, Mode::recharging},
    };
    const auto ev = evaluate(plan, inst);
    const double d0 = 0.1 + 0.2;  // home leg deducted
    const double d1 = 0.2 + 0.3;
    const double d2 = 0.1 + 0.2;
    CHECK(ev.truck_time == doctest::Approx(2.0 / 2.0));
    CHECK(ev.cluster_times[0] == doctest::Approx(std::max(d0, d1) / 4.0));
    CHECK(ev.cluster_times[1] == doctest::Approx(d2 / 4.0));
    CHECK(ev.objective == doctest::Approx(1.0 + (d1 + d2) / 4.0));

    Plan copy = plan;
    finalize(copy, inst);
    CHECK(copy.objective == ev.objective);
    CHECK(copy.truck_time == ev.truck_time);
}

TEST_CASE("evaluate: errors")
{
    const Instance inst = line_instance();
    auto code_of = [&](const Plan& p) {
        try {
            evaluate(p, inst);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::io;  // sentinel: nothing thrown
    };

    Plan twice = one_center_plan();
    twice.drone_trips.push_back(twice.drone_trips[0]);
    CHECK(code_of(twice) == ErrorCode::invalid_plan);

    Plan never = one_center_plan();
    never.drone_trips.clear();
    CHECK(code_of(never) == ErrorCode::invalid_plan);

    Plan stray = one_center_plan();
    stray.drone_trips[0].center = {0.5, 0.5};
    CHECK(code_of(stray) == ErrorCode::invalid_plan);

    Instance short_range = inst;
    short_range.range = 1.0;
    try {
        evaluate(one_center_plan(), short_range);
        FAIL("expected a range violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::range_violation);
    }

    // within the length tolerance is still feasible
    Instance tight = inst;
    tight.range = 1.2 - 1e-12;
    CHECK_NOTHROW(evaluate(one_center_plan(), tight));
}

TEST_CASE("savings")
{
    // 6.2035 and 4.6280 are the reported averages; 25.32% is the reported ratio
    CHECK(savings(6.2035, 4.6280) == doctest::Approx(0.2532).epsilon(1e-3));
    CHECK(savings(3.0, 3.0) == 0.0);
    CHECK(savings(4.0, 5.0) == -0.25);
    CHECK_THROWS_AS(savings(0.0, 1.0), Error);
    try {
        savings(-1.0, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_baseline);
    }
}

TEST_CASE("instance and params validation")
{
    Instance inst = line_instance();
    CHECK_NOTHROW(inst.validate());
    inst.truck_speed = 0.0;
    CHECK_THROWS_AS(inst.validate(), Error);
    inst = line_instance();
    inst.range = -1.0;
    CHECK_THROWS_AS(inst.validate(), Error);
    inst = line_instance();
    inst.customers[0].x = std::nan("");
    CHECK_THROWS_AS(inst.validate(), Error);

    Params p;
    CHECK_NOTHROW(p.validate());
    p.rho1 = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("mode names round trip")
{
    CHECK(parse_mode(to_string(Mode::recharging)) == Mode::recharging);
    CHECK(parse_mode(to_string(Mode::revisiting)) == Mode::revisiting);
    CHECK_THROWS_AS(parse_mode("sideways"), Error);
}

TEST_CASE("centroid")
{
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(centroid(pts) == Point2{0.5, 0.5});
}
