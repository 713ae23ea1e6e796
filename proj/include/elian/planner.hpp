#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "elian/geometry.hpp"
#include "elian/grid.hpp"

namespace elian {

enum class Mode { Lian, Elian };

/// Tunables for one search. For LIAN the segment length is fixed, so
/// delta_min must equal delta_max.
struct PlannerConfig {
    Mode mode = Mode::Elian;
    double delta_max = 20.0;
    double delta_min = 10.0;
    /// Shrink factor applied to a node's segment length when it has no successors.
    double k = 0.5;
    Degrees alpha_max{25.0};
    /// Heuristic inflation; f = g + weight * h.
    double weight = 1.0;
    /// Zero means no limit.
    std::chrono::duration<double> time_cap{0.0};
    /// Number of consecutive equal-length segments after which the length grows back.
    int success_streak = 2;

    static PlannerConfig lian(double delta, Degrees alpha, double weight = 1.0);
    static PlannerConfig elian(double delta_max, double delta_min, double k, Degrees alpha,
                               double weight = 1.0);

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const;

    /// Segment lengths delta_max * k^i that stay >= delta_min, longest first.
    std::vector<double> delta_levels() const;
};

enum class Verdict { Found, NotFound, Timeout };

std::string to_string(Verdict v);
std::string to_string(Mode m);

struct SearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    /// Nodes pushed back to OPEN with a shorter segment length.
    std::uint64_t reinsertions = 0;
    std::uint64_t max_open = 0;
    std::chrono::duration<double> runtime{0.0};
};

struct Outcome {
    Verdict verdict = Verdict::NotFound;
    std::vector<Cell> path;  // non-empty iff verdict == Found
    SearchStats stats;
};

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct SearchNode {
    Cell cell;
    NodeId parent = kNoNode;
    double g = 0.0;
    double f = 0.0;
    /// Index into PlannerConfig::delta_levels(); 0 is delta_max.
    int level = 0;
};

/// Candidate cells for a node at `at` with segment length `delta`: the
/// midpoint circle of radius round(delta) (at least 1) clipped to the grid,
/// plus the goal when it is strictly closer than delta. Unfiltered.
std::vector<Cell> delta_successors(const Grid& grid, Cell at, double delta, Cell goal,
                                   CircleCache& circles);

enum class ExpandResult { Expanded, Reinserted, Discarded };

/// One LIAN / eLIAN search. Owns OPEN, CLOSED and the node arena.
///
/// Nodes are identified by (cell, parent cell) for successor pruning. A node
/// popped from OPEN whose (cell, parent cell, level, growth-eligibility) was
/// already expanded is skipped, since its expansion could only repeat pushes.
class Search {
public:
    Search(const Grid& grid, Cell start, Cell goal, PlannerConfig cfg);

    /// Runs to completion. Pushes the start node if OPEN was never seeded.
    Outcome run();

    /// Adds a node to OPEN. g is accumulated from the parent.
    NodeId push_node(Cell cell, NodeId parent, int level);

    /// Removes the best node from OPEN and records it in CLOSED.
    std::optional<NodeId> pop();

    /// Successor generation with segment-length adjustment for a popped node.
    ExpandResult expand(NodeId id);

    const SearchNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    double delta_of(NodeId id) const { return levels_.at(static_cast<std::size_t>(node(id).level)); }
    std::span<const double> levels() const { return levels_; }
    const SearchStats& stats() const { return stats_; }
    std::size_t open_size() const { return open_.size(); }
    bool closed_contains(Cell cell, std::optional<Cell> parent) const;
    std::vector<Cell> reconstruct_path(NodeId id) const;

    /// Called with every node right before it is expanded.
    void set_expansion_observer(std::function<void(const SearchNode&)> fn) { observer_ = std::move(fn); }

private:
    struct OpenEntry {
        double f;
        double g;
        Cell cell;
        Cell parent_cell;
        int level;
        std::uint64_t seq;
        NodeId id;
    };
    struct OpenOrder {
        bool operator()(const OpenEntry& a, const OpenEntry& b) const;
    };

    std::uint64_t pair_key(Cell cell, NodeId parent) const;
    bool growth_eligible(NodeId id) const;
    void push_entry(NodeId id);

    const Grid& grid_;
    Cell start_;
    Cell goal_;
    PlannerConfig cfg_;
    std::vector<double> levels_;
    CircleCache circles_;
    std::vector<SearchNode> nodes_;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open_;
    std::unordered_set<std::uint64_t> closed_;
    std::unordered_set<std::uint64_t> expanded_;
    std::uint64_t seq_ = 0;
    SearchStats stats_;
    std::function<void(const SearchNode&)> observer_;
};

/// Convenience wrapper. Throws std::invalid_argument when start or goal is not
/// traversable or the config is invalid.
Outcome search(const Grid& grid, Cell start, Cell goal, const PlannerConfig& cfg);

struct PathViolation {
    enum class Kind { LineOfSight, Angle, Degenerate };
    Kind kind;
    /// Segment start index for LineOfSight/Degenerate, waypoint index for Angle.
    std::size_t index;
    std::string description;
};

/// Independent feasibility check of a finished path. Returns nullopt when every
/// segment has line of sight and every turn is within alpha_max. Throws
/// std::invalid_argument for paths shorter than two waypoints.
std::optional<PathViolation> validate_path(const Grid& grid, std::span<const Cell> path,
                                           Degrees alpha_max);

}  // namespace elian
