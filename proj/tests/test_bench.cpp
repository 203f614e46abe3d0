#include "support.hpp"

#include "tspsd/bench.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace tspsd;

namespace {

std::filesystem::path temp_file(const std::string& stem)
{
    return std::filesystem::temp_directory_path() / (stem + "_" + std::to_string(::getpid()) + ".csv");
}

bool inside_unit_square(Point2 p)
{
    return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

}  // namespace

TEST_CASE("distribution names")
{
    for (Distribution d : {Distribution::uniform, Distribution::gauss1, Distribution::gauss4}) {
        CHECK(parse_distribution(to_string(d)) == d);
    }
    CHECK_THROWS_AS(parse_distribution("normal"), Error);
    CHECK(gauss4_means().size() == 4);
}

TEST_CASE("generate: uniform layout")
{
    GenSpec spec;
    spec.n_customers = 4;
    spec.n_drones = 3;
    spec.seed = 11;
    spec.drone_speed = 2.0;
    const Instance inst = generate(spec);
    REQUIRE(inst.num_customers() == 4);
    REQUIRE(inst.num_drones() == 3);
    CHECK(inst.drone_speed == 2.0);
    CHECK(inst.range == 0.8);
    CHECK(!inst.center.has_value());
    for (auto p : inst.customers) {
        CHECK(inside_unit_square(p));
    }
    // customers come first in the stream, so they do not depend on |D|
    GenSpec fewer = spec;
    fewer.n_drones = 0;
    CHECK(generate(fewer).customers == inst.customers);
    CHECK(generate(spec).drone_bases == inst.drone_bases);
    GenSpec other = spec;
    other.seed = 12;
    CHECK(generate(other).customers != inst.customers);
}

TEST_CASE("generate: uniform golden coordinates")
{
    GenSpec spec;
    spec.n_customers = 4;
    spec.n_drones = 0;
    spec.seed = 11;
    const Instance inst = generate(spec);
    // frozen on first run
    const std::vector<Point2> want{{0.16571311260445665, 0.77342585615343928},
                                   {0.37802519926765088, 0.69862808649614949},
                                   {0.058708883421143443, 0.28398493221967025},
                                   {0.89411632488856629, 0.67038874398921378}};
    REQUIRE(inst.customers.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(inst.customers[i].x == doctest::Approx(want[i].x).epsilon(1e-12));
        CHECK(inst.customers[i].y == doctest::Approx(want[i].y).epsilon(1e-12));
    }
}

TEST_CASE("generate: gaussian clouds")
{
    GenSpec one;
    one.n_customers = 200;
    one.n_drones = 0;
    one.distribution = Distribution::gauss1;
    one.sigma2 = 1e-6;
    for (auto p : generate(one).customers) {
        CHECK(dist(p, Point2{0.5, 0.5}) < 0.05);
    }

    GenSpec four = one;
    four.distribution = Distribution::gauss4;
    four.sigma2 = 0.005;
    four.n_customers = 400;
    const auto means = gauss4_means();
    std::size_t near = 0;
    for (auto p : generate(four).customers) {
        CHECK(inside_unit_square(p));
        double best = std::numeric_limits<double>::infinity();
        for (auto m : means) {
            best = std::min(best, dist(p, m));
        }
        near += best <= 0.25 ? 1 : 0;
    }
    CHECK(near >= 360);

    GenSpec wide = one;
    wide.sigma2 = 0.5;
    for (auto p : generate(wide).customers) {
        CHECK(inside_unit_square(p));
    }
}

TEST_CASE("truck-only baseline")
{
    Instance corners;
    corners.customers = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    corners.range = 1.0;
    CHECK(tsp_baseline(corners) == doctest::Approx(4.0).epsilon(1e-12));
    Instance slow = corners;
    slow.truck_speed = 0.5;
    CHECK(tsp_baseline(slow) == doctest::Approx(8.0).epsilon(1e-12));
    Instance one;
    one.customers = {{0.3, 0.3}};
    one.range = 1.0;
    CHECK(tsp_baseline(one) == 0.0);
}

TEST_CASE("truck-and-drone baseline")
{
    Instance line;
    line.customers = {{0.1, 0.5}, {0.3, 0.5}, {0.6, 0.5}, {0.9, 0.5}};
    line.range = 1.0;
    line.drone_speed = 1.0;
    // on a line a sortie never shortens anything
    CHECK(tspd_baseline(line) == doctest::Approx(tsp_baseline(line)).epsilon(1e-12));

    Instance one;
    one.customers = {{0.3, 0.3}};
    one.range = 1.0;
    CHECK(tspd_baseline(one) == 0.0);

    for (std::uint64_t s = 0; s < 5; ++s) {
        Instance inst = testing::random_instance(600 + s, 20, 0, 1.0, 3.0);
        const double tsp = tsp_baseline(inst);
        const double tspd = tspd_baseline(inst);
        CHECK(tspd < tsp);
        inst.drone_speed = 0.2;
        CHECK(tspd_baseline(inst) <= tsp + 1e-12);
    }
}

TEST_CASE("sweep instance follows the cell")
{
    SweepConfig config;
    config.n_customers = 30;
    SweepCell cell;
    cell.rho1 = 2.5;
    cell.rho2 = 0.5;
    cell.range = 1.1;
    const Instance inst = sweep_instance(config, cell, 7);
    CHECK(inst.num_customers() == 30);
    CHECK(inst.num_drones() == 15);
    CHECK(inst.truck_speed == 1.0);
    CHECK(inst.drone_speed == 2.5);
    CHECK(inst.range == 1.1);
    SweepCell faster = cell;
    faster.rho1 = 1.0;
    CHECK(sweep_instance(config, faster, 7).customers == inst.customers);
    cell.rho2 = 1.0 / 3.0;
    CHECK(sweep_instance(config, cell, 7).num_drones() == 10);
}

TEST_CASE("grid of cells")
{
    SweepConfig config;
    config.rho1 = {1.0, 2.0, 3.0};
    config.rho2 = {0.5, 1.0};
    config.range = {0.8};
    CHECK(config.cells().size() == 6);
}

TEST_CASE("run_cell savings are consistent")
{
    SweepConfig config;
    config.n_customers = 20;
    SweepCell cell;
    const SweepResult r = run_cell(config, cell, 3);
    CHECK(r.seed == 3);
    CHECK(r.n_customers == 20);
    CHECK(r.n_drones == static_cast<std::size_t>(std::llround(cell.rho2 * 20.0)));
    CHECK(r.baseline_objective == doctest::Approx(tsp_baseline(sweep_instance(config, cell, 3), 3)).epsilon(1e-12));
    CHECK(r.savings == doctest::Approx((r.baseline_objective - r.objective) / r.baseline_objective).epsilon(1e-12));
    CHECK(r.savings_tspd == doctest::Approx((r.tspd_objective - r.objective) / r.tspd_objective).epsilon(1e-12));
    CHECK(r.runtime >= 0.0);
}

TEST_CASE("sweep writes, resumes and reads its CSV")
{
    const auto path = temp_file("tspsd_sweep");
    std::filesystem::remove(path);
    SweepConfig config;
    config.n_customers = 12;
    config.rho1 = {2.0};
    config.reps = 1;
    const auto first = sweep(config, &path);
    REQUIRE(first.size() == 1);
    auto rows = read_csv(path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].objective == first[0].objective);
    CHECK(rows[0].savings == first[0].savings);

    // tamper with the stored objective: a resumed run must keep it, not recompute it
    {
        std::ifstream in(path);
        std::string header, line;
        std::getline(in, header);
        std::getline(in, line);
        in.close();
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            f.push_back(cell);
        }
        f[10] = "123.5";
        std::string joined = f[0];
        for (std::size_t i = 1; i < f.size(); ++i) {
            joined += "," + f[i];
        }
        std::ofstream(path) << header << '\n' << joined << '\n';
    }
    config.reps = 2;
    const auto resumed = sweep(config, &path);
    REQUIRE(resumed.size() == 2);
    CHECK(resumed[0].objective == 123.5);
    CHECK(resumed[1].seed == config.base_seed + 1);
    CHECK(read_csv(path).size() == 2);

    // a torn last line is dropped
    {
        std::ofstream(path, std::ios::app) << "2,0.66";
    }
    CHECK(read_csv(path).size() == 2);

    std::ofstream(path) << "not,a,header\n";
    CHECK_THROWS_AS(read_csv(path), Error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_csv(path), Error);

    SweepConfig empty;
    empty.rho1.clear();
    CHECK_THROWS_AS(sweep(empty), Error);
}

TEST_CASE("sweep rows are sorted and thread count does not change them")
{
    SweepConfig config;
    config.n_customers = 10;
    config.rho1 = {3.0, 1.0};
    config.reps = 2;
    const auto one = sweep(config);
    config.threads = 3;
    const auto three = sweep(config);
    REQUIRE(one.size() == 4);
    REQUIRE(three.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(one[i].cell.rho1 == three[i].cell.rho1);
        CHECK(one[i].seed == three[i].seed);
        CHECK(one[i].objective == three[i].objective);
    }
    CHECK(csv_row(one[0]).rfind("1,", 0) == 0);
}

TEST_CASE("TOML sweep description")
{
    const auto c = parse_sweep_config(R"(
n_customers = 30
rho1 = [1.0, 2.0]
rho2 = 0.5
L = [0.8, 1.2]
distribution = ["gauss1", "gauss4"]
sigma2 = 0.005
algorithm = 2
mode = "revisiting"
reps = 4
seed = 9
)");
    CHECK(c.n_customers == 30);
    CHECK(c.rho1 == std::vector<double>{1.0, 2.0});
    CHECK(c.rho2 == std::vector<double>{0.5});
    CHECK(c.range == std::vector<double>{0.8, 1.2});
    CHECK(c.distributions == std::vector<Distribution>{Distribution::gauss1, Distribution::gauss4});
    CHECK(c.algorithm == Algorithm::alg2);
    CHECK(c.mode == Mode::revisiting);
    CHECK(c.reps == 4);
    CHECK(c.base_seed == 9);
    CHECK(c.cells().size() == 8);

    const auto d = parse_sweep_config("");
    CHECK(d.n_customers == 60);
    CHECK(d.algorithm == Algorithm::alg3);
    CHECK_THROWS_AS(parse_sweep_config("rho1 = [1.0,"), Error);
    CHECK_THROWS_AS(parse_sweep_config("reps = 0"), Error);
}

TEST_CASE("slow drones and few of them do not pay off")
{
    SweepConfig config;
    config.n_customers = 30;
    config.rho1 = {0.75};
    config.rho2 = {0.5};
    config.reps = 4;
    double total = 0.0;
    for (const auto& r : sweep(config)) {
        total += r.savings;
    }
    CHECK(total / 4.0 <= 0.0);
}
