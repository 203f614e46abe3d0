#pragma once

#include "tspsd/core.hpp"
#include "tspsd/drone_router.hpp"
#include "tspsd/exact.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace tspsd {

enum class VarType { continuous, binary, integer };

struct Variable {
    std::string name;
    VarType type = VarType::continuous;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

struct Term {
    std::size_t var = 0;
    double coef = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

enum class Sense { le, ge, eq };

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    Sense sense = Sense::le;
    double rhs = 0.0;
};

struct MilpModel {
    std::string name;
    double big_m = 0.0;
    std::vector<std::string> comments;  // one line each, e.g. the route sets
    std::vector<Variable> variables;
    std::vector<Term> objective;        // minimized
    std::vector<Constraint> constraints;

    std::size_t add_variable(std::string name, VarType type = VarType::continuous);
    /// Throws invalid_input for an unknown name.
    std::size_t find(const std::string& name) const;
    std::size_t count(VarType type) const noexcept;
};

/// LP text: "\Problem name" header, Minimize, Subject To, Bounds, Binaries,
/// Generals, End. Coefficients are printed with 12 significant digits and
/// long rows wrap. Written variable lists follow first use in the rows.
std::string write_lp(const MilpModel& model);

/// Reads text produced by write_lp. Throws invalid_input on anything else.
MilpModel parse_lp(const std::string& text);

/// |C| (2 + sqrt 2) / min(v_T, v_D).
double big_m(const Instance& inst) noexcept;

inline constexpr std::size_t kSubtourLimit = 12;

/// Builds the MILP of one formulation. I and II use inst.one_center();
/// II and IV list their enumerated routes as comments. The subtour
/// elimination rows of III and IV are enumerated in full, so those refuse
/// more than `subtour_limit` customers with too_large.
MilpModel export_milp(const Instance& inst, Problem problem, std::size_t max_visits = kDefaultMaxVisits,
                      std::size_t subtour_limit = kSubtourLimit);

}  // namespace tspsd
