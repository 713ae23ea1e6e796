#include "elian/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace elian {

namespace {

// Walks the cells crossed by the segment between two cell centers. The error
// term compares, in doubled units, the parameter of the next vertical grid-line
// crossing against the next horizontal one; zero means both happen at once,
// i.e. the segment passes through a lattice corner.
template <typename Visit, typename Corner>
bool walk_segment(Cell a, Cell b, Visit&& visit, Corner&& corner)
{
    const int dx = std::abs(b.col - a.col);
    const int dy = std::abs(b.row - a.row);
    const int sx = b.col > a.col ? 1 : -1;
    const int sy = b.row > a.row ? 1 : -1;
    long long error = static_cast<long long>(dx) - dy;
    const long long dx2 = 2LL * dx;
    const long long dy2 = 2LL * dy;

    Cell cur = a;
    if (!visit(cur)) return false;
    while (cur != b) {
        if (error > 0) {
            cur.col += sx;
            error -= dy2;
        } else if (error < 0) {
            cur.row += sy;
            error += dx2;
        } else {
            if (!corner(Cell{cur.col + sx, cur.row}, Cell{cur.col, cur.row + sy})) return false;
            cur.col += sx;
            cur.row += sy;
            error += dx2 - dy2;
        }
        if (!visit(cur)) return false;
    }
    return true;
}

// 0 for angles in [0, pi), 1 for [pi, 2pi), with row pointing down.
int half_plane(Offset o) noexcept
{
    return (o.drow < 0 || (o.drow == 0 && o.dcol < 0)) ? 1 : 0;
}

}  // namespace

bool line_of_sight(const Grid& grid, Cell a, Cell b)
{
    if (!grid.in_bounds(a) || !grid.in_bounds(b)) return false;
    return walk_segment(
        a, b, [&](Cell c) { return !grid.blocked(c); },
        [&](Cell side1, Cell side2) { return !grid.blocked(side1) || !grid.blocked(side2); });
}

std::vector<Cell> traverse_segment(Cell a, Cell b)
{
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(std::abs(b.col - a.col) + std::abs(b.row - a.row) + 1));
    walk_segment(
        a, b,
        [&](Cell c) {
            cells.push_back(c);
            return true;
        },
        [](Cell, Cell) { return true; });
    return cells;
}

std::vector<Offset> circle_offsets(int r)
{
    if (r < 0) throw std::invalid_argument("circle radius must be non-negative");
    if (r == 0) return {Offset{0, 0}};

    std::vector<Offset> pts;
    int x = r;
    int y = 0;
    int err = 1 - r;
    while (x >= y) {
        for (const Offset o : {Offset{x, y}, Offset{y, x}, Offset{-y, x}, Offset{-x, y},
                               Offset{-x, -y}, Offset{-y, -x}, Offset{y, -x}, Offset{x, -y}})
            pts.push_back(o);
        ++y;
        if (err < 0) {
            err += 2 * y + 1;
        } else {
            --x;
            err += 2 * (y - x) + 1;
        }
    }

    std::sort(pts.begin(), pts.end(), [](Offset p, Offset q) {
        const int hp = half_plane(p);
        const int hq = half_plane(q);
        if (hp != hq) return hp < hq;
        const long long cross = static_cast<long long>(p.dcol) * q.drow -
                                static_cast<long long>(p.drow) * q.dcol;
        return cross > 0;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::span<const Offset> CircleCache::get(int r)
{
    const auto idx = static_cast<std::size_t>(r);
    if (idx >= by_radius_.size()) {
        by_radius_.resize(idx + 1);
        filled_.resize(idx + 1, false);
    }
    if (!filled_[idx]) {
        by_radius_[idx] = circle_offsets(r);
        filled_[idx] = true;
    }
    return by_radius_[idx];
}

Degrees turn_angle(Cell prev, Cell mid, Cell next)
{
    const double ux = mid.col - prev.col;
    const double uy = mid.row - prev.row;
    const double vx = next.col - mid.col;
    const double vy = next.row - mid.row;
    if ((ux == 0 && uy == 0) || (vx == 0 && vy == 0))
        throw std::invalid_argument("turn_angle: zero-length segment");
    // atan2 form is the arccos of the normalized dot product without the
    // cancellation near 0 and 180 degrees.
    const double rad = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
    return Degrees{std::clamp(rad * 180.0 / std::numbers::pi, 0.0, 180.0)};
}

double euclid(Cell a, Cell b) noexcept
{
    return std::hypot(static_cast<double>(b.col - a.col), static_cast<double>(b.row - a.row));
}

double path_length(std::span<const Cell> path) noexcept
{
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += euclid(path[i - 1], path[i]);
    return total;
}

double accumulated_angle(std::span<const Cell> path)
{
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
        total += turn_angle(path[i - 1], path[i], path[i + 1]).value;
    return total;
}

}  // namespace elian
