// Command line front end: solve, sweep, generate, oracle, export.

#include "tspsd/bench.hpp"
#include "tspsd/exact.hpp"
#include "tspsd/io.hpp"
#include "tspsd/milp.hpp"
#include "tspsd/pipeline.hpp"
#include "tspsd/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitTooLarge = 3;

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        tspsd::save_text(out, text);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Truck and crowdsourced drone delivery solver"};
    app.require_subcommand(1);

    std::string instance_path, out_path, svg_path;
    std::string algorithm = "3", mode = "recharge";
    std::uint64_t seed = 0;
    auto* solve = app.add_subcommand("solve", "Run the heuristic pipeline and print the plan as JSON");
    solve->add_option("--instance", instance_path, "Instance JSON")->required();
    solve->add_option("--algorithm", algorithm, "original, 1, 2 or 3")->capture_default_str();
    solve->add_option("--mode", mode, "recharge, revisit or best")->capture_default_str();
    solve->add_option("--seed", seed, "Random seed")->capture_default_str();
    solve->add_option("--svg", svg_path, "Also draw the plan");
    solve->add_option("--out", out_path, "Write the plan here instead of stdout");

    std::string config_path;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep to CSV");
    sweep->add_option("--config", config_path, "TOML sweep description")->required();
    sweep->add_option("--out", out_path, "CSV file (resumed if present)")->required();

    std::string spec_path;
    auto* generate = app.add_subcommand("generate", "Sample an instance");
    generate->add_option("--spec", spec_path, "Generator spec JSON")->required();
    generate->add_option("--out", out_path, "Instance JSON to write");

    std::string problem = "3";
    std::size_t max_visits = tspsd::kDefaultMaxVisits;
    auto* oracle = app.add_subcommand("oracle", "Solve a tiny instance exactly");
    oracle->add_option("--instance", instance_path, "Instance JSON")->required();
    oracle->add_option("--problem", problem, "1, 2, 3 or 4")->capture_default_str();
    oracle->add_option("--max-visits", max_visits, "Visits per trip in revisiting problems")->capture_default_str();
    oracle->add_option("--out", out_path, "Write the result here instead of stdout");

    std::size_t subtour_limit = tspsd::kSubtourLimit;
    auto* exporter = app.add_subcommand("export", "Write the MILP of a problem in LP format");
    exporter->add_option("--problem", problem, "1, 2, 3, 4, 1alt or 2alt")->required();
    exporter->add_option("--instance", instance_path, "Instance JSON")->required();
    exporter->add_option("--out", out_path, "LP file to write");
    exporter->add_option("--max-visits", max_visits, "Route length cap for 2 and 4")->capture_default_str();
    exporter->add_option("--subtour-limit", subtour_limit, "Largest customer count for 3 and 4")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*solve) {
            const auto inst = tspsd::load_instance(instance_path);
            tspsd::PipelineConfig config;
            config.algorithm = tspsd::parse_algorithm(algorithm);
            config.params.seed = seed;
            config.params.rho1 = inst.drone_speed / inst.truck_speed;
            config.params.rho2 = static_cast<double>(inst.num_drones()) / static_cast<double>(inst.num_customers());
            tspsd::Plan plan;
            if (mode == "best") {
                plan = tspsd::compare_modes(inst, config);
            } else {
                config.mode = tspsd::parse_mode(mode);
                plan = tspsd::run(inst, config);
            }
            emit(tspsd::plan_to_json(plan), out_path);
            if (!svg_path.empty()) {
                tspsd::save_text(svg_path, tspsd::render_svg(inst, plan));
            }
        } else if (*sweep) {
            const auto config = tspsd::load_sweep_config(config_path);
            const std::filesystem::path csv = out_path;
            const auto rows = tspsd::sweep(config, &csv);
            std::fprintf(stderr, "%zu rows in %s\n", rows.size(), out_path.c_str());
        } else if (*generate) {
            const auto spec = tspsd::genspec_from_json(tspsd::load_text(spec_path));
            emit(tspsd::instance_to_json(tspsd::generate(spec)), out_path);
        } else if (*oracle) {
            const auto inst = tspsd::load_instance(instance_path);
            const auto result = tspsd::brute_force(inst, tspsd::parse_problem(problem), max_visits);
            nlohmann::json j;
            j["objective"] = result.objective;
            j["nodes_explored"] = result.nodes_explored;
            j["plan"] = nlohmann::json::parse(tspsd::plan_to_json(result.plan));
            emit(j.dump(2) + "\n", out_path);
        } else if (*exporter) {
            const auto inst = tspsd::load_instance(instance_path);
            const auto model = tspsd::export_milp(inst, tspsd::parse_problem(problem), max_visits, subtour_limit);
            emit(tspsd::write_lp(model), out_path);
        }
    } catch (const tspsd::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == tspsd::ErrorCode::too_large ? kExitTooLarge : kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
