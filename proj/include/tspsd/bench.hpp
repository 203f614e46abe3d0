#pragma once

#include "tspsd/core.hpp"
#include "tspsd/pipeline.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tspsd {

enum class Distribution { uniform, gauss1, gauss4 };

const char* to_string(Distribution d) noexcept;
Distribution parse_distribution(const std::string& text);

struct GenSpec {
    std::size_t n_customers = 60;
    std::size_t n_drones = 40;
    Distribution distribution = Distribution::uniform;
    double sigma2 = 0.01;
    Point2 mean{0.5, 0.5};  // gauss1 only
    std::uint64_t seed = 0;
    double truck_speed = 1.0;
    double drone_speed = 1.0;
    double range = 0.8;
};

/// The four gauss4 mixture means.
std::vector<Point2> gauss4_means();

/// Customers first, then drone bases, from one seeded stream. Gaussian
/// samples outside the unit square are redrawn.
Instance generate(const GenSpec& spec);

/// Truck-only delivery: lk_tour over all customers / v_T.
double tsp_baseline(const Instance& inst, std::uint64_t seed = 0);

/// Truck carrying one drone with unlimited range. Starting from the truck
/// tour, repeatedly takes the best sortie: the truck skips c between its
/// neighbours a and b while the drone flies a -> c -> b, and the leg costs
/// whichever of the two arrives later. Stops when no sortie saves time.
double tspd_baseline(const Instance& inst, std::uint64_t seed = 0);

struct SweepCell {
    double rho1 = 2.0;
    double rho2 = 2.0 / 3.0;
    double range = 0.8;
    double sigma2 = 0.01;
    Distribution distribution = Distribution::uniform;
};

struct SweepConfig {
    std::size_t n_customers = 60;
    std::vector<double> rho1{2.0};
    std::vector<double> rho2{2.0 / 3.0};
    std::vector<double> range{0.8};
    std::vector<double> sigma2{0.01};
    std::vector<Distribution> distributions{Distribution::uniform};
    Algorithm algorithm = Algorithm::alg3;
    Mode mode = Mode::recharging;
    std::size_t reps = 1;
    std::uint64_t base_seed = 1;
    std::size_t threads = 1;

    std::vector<SweepCell> cells() const;
};

struct SweepResult {
    SweepCell cell;
    Algorithm algorithm = Algorithm::alg3;
    Mode mode = Mode::recharging;
    std::uint64_t seed = 0;
    std::size_t n_customers = 0;
    std::size_t n_drones = 0;
    double objective = 0.0;
    double baseline_objective = 0.0;
    double savings = 0.0;
    double tspd_objective = 0.0;
    double savings_tspd = 0.0;
    double runtime = 0.0;  // seconds
};

/// The instance a sweep uses for a cell and replicate seed. v_T = 1,
/// v_D = rho1 and |D| = round(rho2 |C|). The geometry only depends on the
/// seed and distribution, so cells differing in speed or range are paired.
Instance sweep_instance(const SweepConfig& config, const SweepCell& cell, std::uint64_t seed);

/// One cell and seed: pipeline, both baselines and the savings ratios.
SweepResult run_cell(const SweepConfig& config, const SweepCell& cell, std::uint64_t seed);

/// Runs every cell for seeds base_seed .. base_seed + reps - 1 across
/// `threads` workers. With a csv path, rows already present are skipped,
/// new rows are appended as they finish and the file is finally rewritten
/// sorted. Returns the rows of the full grid, sorted.
std::vector<SweepResult> sweep(const SweepConfig& config, const std::filesystem::path* csv = nullptr);

/// Reads a TOML sweep description. Keys match the SweepConfig fields;
/// `distribution` may be a string or a list of strings.
SweepConfig load_sweep_config(const std::filesystem::path& path);
SweepConfig parse_sweep_config(const std::string& toml_text);

std::string csv_header();
std::string csv_row(const SweepResult& r);
/// Throws invalid_input on a malformed file.
std::vector<SweepResult> read_csv(const std::filesystem::path& path);

}  // namespace tspsd
