#pragma once

#include "tspsd/core.hpp"

#include <string>

namespace tspsd {

/// Unit-square drawing of a plan: truck tour as a closed polyline, drone
/// trips as thin dashed paths, customers, truck stops and drone bases as
/// markers.
std::string render_svg(const Instance& inst, const Plan& plan, int size_px = 600);

}  // namespace tspsd
