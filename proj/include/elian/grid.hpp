#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elian {

/// Grid cell index. Column grows to the right, row grows downward (row 0 is the
/// first map line), matching MovingAI scenario coordinates.
struct Cell {
    int col = 0;
    int row = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Thrown by the map/scenario readers. The message names the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Immutable occupancy map.
class Grid {
public:
    Grid(int width, int height, std::vector<std::uint8_t> blocked);

    /// All-free grid.
    static Grid empty(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool in_bounds(Cell c) const noexcept
    {
        return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
    }

    /// Unchecked; caller guarantees in_bounds(c).
    bool blocked(Cell c) const noexcept
    {
        return blocked_[index(c)] != 0;
    }

    std::size_t index(Cell c) const noexcept
    {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.col);
    }

    std::size_t blocked_count() const noexcept;

    /// Copy with one cell toggled; convenient for tests and map construction.
    Grid with_blocked(Cell c, bool value) const;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> blocked_;
};

/// True iff c lies inside the grid and is not blocked.
bool is_traversable(const Grid& grid, Cell c) noexcept;

/// One benchmark task.
struct Instance {
    std::string map_id;
    Cell start;
    Cell goal;
    std::optional<int> bucket;
    std::optional<double> reference_length;
    /// Zero-based position in the originating scenario file.
    std::size_t index = 0;

    /// "<map_id>:<index>", stable across runs.
    std::string id() const;
};

struct ScenarioSet {
    std::string map_id;
    int map_width = 0;
    int map_height = 0;
    std::vector<Instance> instances;
};

/// MovingAI `.map` reader. '.', 'G', 'S' are free; '@', 'O', 'T', 'W' blocked.
Grid parse_map(std::istream& in);

/// Headerless test format: '#' blocked, '.' free, one row per line.
Grid parse_ascii_grid(std::istream& in);

/// MovingAI `.scen` reader. Rejects rows whose start/goal lies outside the
/// declared map size, and rows naming a different map than the first row.
ScenarioSet parse_scen(std::istream& in);

/// Loads either format from disk, sniffing the `type` header.
Grid load_grid(const std::string& path);
ScenarioSet load_scen(const std::string& path);

/// Inverse of the ASCII format: '#' for blocked, '.' for free.
std::string to_ascii(const Grid& grid);

/// Throws std::invalid_argument when start or goal is out of bounds or blocked.
void check_instance(const Grid& grid, const Instance& inst);

}  // namespace elian
