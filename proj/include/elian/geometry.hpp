#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elian/grid.hpp"

namespace elian {

/// Displacement between two cells.
struct Offset {
    int dcol = 0;
    int drow = 0;

    friend constexpr bool operator==(const Offset&, const Offset&) = default;
};

/// Angle in degrees, always within [0, 180].
struct Degrees {
    double value = 0.0;

    friend constexpr bool operator==(const Degrees&, const Degrees&) = default;
    friend constexpr auto operator<=>(const Degrees&, const Degrees&) = default;
};

/// Slack applied when comparing a turn against the angle limit.
inline constexpr double kAngleTolerance = 1e-9;

inline bool within_angle(Degrees turn, Degrees limit) noexcept
{
    return turn.value <= limit.value + kAngleTolerance;
}

/// Supercover line-of-sight between cell centers. Every cell whose interior the
/// segment crosses must be free, both endpoints included. Where the segment
/// passes exactly through a lattice corner, at least one of the two cells that
/// only touch the corner must be free.
bool line_of_sight(const Grid& grid, Cell a, Cell b);

/// Cells whose interior the segment a-b crosses, in traversal order from a.
/// Corner-only neighbours are not included.
std::vector<Cell> traverse_segment(Cell a, Cell b);

/// Midpoint-circle rasterization of radius r over all eight octants,
/// deduplicated, sorted clockwise (screen orientation, row down) from (r, 0).
std::vector<Offset> circle_offsets(int r);

/// Per-radius memo of circle_offsets. Not thread-safe; one per search.
class CircleCache {
public:
    std::span<const Offset> get(int r);

private:
    std::vector<std::vector<Offset>> by_radius_;
    std::vector<bool> filled_;
};

/// Heading change between (mid - prev) and (next - mid).
/// Precondition: prev != mid and mid != next.
Degrees turn_angle(Cell prev, Cell mid, Cell next);

/// Euclidean distance between cell centers.
double euclid(Cell a, Cell b) noexcept;

/// Sum of segment lengths.
double path_length(std::span<const Cell> path) noexcept;

/// Sum of turn angles over interior waypoints, in degrees.
double accumulated_angle(std::span<const Cell> path);

}  // namespace elian
