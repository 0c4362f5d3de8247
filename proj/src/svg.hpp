/*
 * Hand-rolled SVG renderings of sweep and climb outputs (scatter/line
 * panels; no external plotting dependency).
 */
#pragma once

#include <string>
#include <vector>

#include "fri/phase.hpp"

namespace fri::cli {

std::string render_sweep_svg(const std::vector<PhasePoint>& rows);
std::string render_climb_svg(const ClimbPath& path, const RegressionResult* fit);

}  // namespace fri::cli
