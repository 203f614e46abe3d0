#pragma once

#include "tspsd/bench.hpp"
#include "tspsd/core.hpp"

#include <filesystem>
#include <string>

namespace tspsd {

/// {"customers": [[x, y], ...], "drones": [[x, y], ...], "v_t": .., "v_d": ..,
///  "L": .., "center": [x, y] (optional)}. Throws invalid_input on bad JSON or
/// a schema mismatch.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

Instance load_instance(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);

/// Stable key order and number formatting; no timing fields, so equal plans
/// give equal bytes.
std::string plan_to_json(const Plan& plan);
Plan plan_from_json(const std::string& text);

/// {"n_customers", "n_drones", "distribution", "sigma2", "mean", "seed",
///  "v_t", "v_d", "L"}; absent keys keep their defaults.
GenSpec genspec_from_json(const std::string& text);

}  // namespace tspsd
