#pragma once

#include <ostream>
#include <span>

#include "elian/grid.hpp"

namespace elian {

/// Writes the grid with one <rect class="blocked"> per blocked cell, the path
/// as a single <polyline> through cell centers, and circle markers for the
/// first (class="start") and last (class="goal") waypoint. Output depends only
/// on the inputs.
void render_svg(const Grid& grid, std::span<const Cell> path, std::ostream& out);

}  // namespace elian
