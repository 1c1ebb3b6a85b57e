#pragma once

#include <string>

#include "detour/curve.hpp"
#include "detour/problem.hpp"
#include "detour/repair.hpp"

namespace detour {

/// 2D plot: domain outline, obstacles as crosses, working balls dashed,
/// original path thin and repaired path thick. Requires a 2D space.
std::string render_svg(const RepairProblem& problem, const Curve& repaired,
                       const DetourRadii& radii);

}  // namespace detour
