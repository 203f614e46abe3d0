#pragma once

#include "tspsd/core.hpp"
#include "tspsd/drone_router.hpp"

#include <cstddef>
#include <string>

namespace tspsd {

/// I/II: one given center, recharging/revisiting. III/IV: centers chosen
/// among the customers. The alternative I/II models only exist as MILPs.
enum class Problem { I, II, III, IV, I_alt, II_alt };

const char* to_string(Problem problem) noexcept;
/// Accepts "1".."4", "1alt", "2alt" and the roman spellings.
Problem parse_problem(const std::string& text);
Mode problem_mode(Problem problem) noexcept;

inline constexpr std::size_t kOracleMaxCustomers = 7;
inline constexpr std::size_t kOracleMaxDrones = 5;

struct ExactResult {
    double objective = 0.0;
    Plan plan;
    std::size_t nodes_explored = 0;
};

/// Optimal plan by exhaustive search with a monotone bound.
///
/// For III/IV every nonempty set of customers is tried as the truck stops,
/// toured optimally; the rest go to drones, each drone working at one stop.
/// I/II serve everything by drone from inst.one_center(). A drone's set of
/// customers is split into trips of at most `max_visits` visits (one in
/// recharging mode) as cheaply as possible. The incumbent is only replaced by
/// a strictly better plan, so the result is deterministic.
///
/// Throws too_large beyond kOracleMaxCustomers / kOracleMaxDrones,
/// invalid_input for the alternative models and infeasible_cluster when no
/// plan exists (I/II with an unreachable customer).
ExactResult brute_force(const Instance& inst, Problem problem, std::size_t max_visits = kDefaultMaxVisits);

/// (heuristic - optimal) / optimal against brute_force. Revisiting problems
/// allow unbounded visits per trip here. A zero optimum yields 0 when the
/// heuristic is zero as well and infinity otherwise.
double verify_against_oracle(const Instance& inst, Problem problem, const Plan& heuristic_plan);

}  // namespace tspsd
