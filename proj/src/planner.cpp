#include "elian/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace elian {

namespace {

constexpr std::size_t kMaxLevels = 64;
constexpr double kLevelSlack = 1e-9;

}  // namespace

PlannerConfig PlannerConfig::lian(double delta, Degrees alpha, double weight)
{
    PlannerConfig cfg;
    cfg.mode = Mode::Lian;
    cfg.delta_max = delta;
    cfg.delta_min = delta;
    cfg.alpha_max = alpha;
    cfg.weight = weight;
    return cfg;
}

PlannerConfig PlannerConfig::elian(double delta_max, double delta_min, double k, Degrees alpha,
                                   double weight)
{
    PlannerConfig cfg;
    cfg.mode = Mode::Elian;
    cfg.delta_max = delta_max;
    cfg.delta_min = delta_min;
    cfg.k = k;
    cfg.alpha_max = alpha;
    cfg.weight = weight;
    return cfg;
}

void PlannerConfig::validate() const
{
    if (!(delta_max > 0.0) || !std::isfinite(delta_max)) throw std::invalid_argument("delta_max must be positive");
    if (!(delta_min > 0.0)) throw std::invalid_argument("delta_min must be positive");
    if (delta_min > delta_max) throw std::invalid_argument("delta_min exceeds delta_max");
    if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("k must lie in (0, 1)");
    if (!(alpha_max.value >= 0.0 && alpha_max.value <= 180.0))
        throw std::invalid_argument("alpha_max must lie in [0, 180] degrees");
    if (!(weight >= 1.0) || !std::isfinite(weight)) throw std::invalid_argument("weight must be >= 1");
    if (time_cap.count() < 0.0) throw std::invalid_argument("time_cap must be non-negative");
    if (success_streak < 1) throw std::invalid_argument("success_streak must be >= 1");
    if (mode == Mode::Lian && delta_min != delta_max)
        throw std::invalid_argument("LIAN uses a fixed segment length: delta_min must equal delta_max");
    if (delta_levels().size() > kMaxLevels) throw std::invalid_argument("too many segment-length levels");
}

std::vector<double> PlannerConfig::delta_levels() const
{
    std::vector<double> levels{delta_max};
    if (mode == Mode::Lian) return levels;
    double d = delta_max * k;
    while (d >= delta_min - kLevelSlack && levels.size() <= kMaxLevels) {
        levels.push_back(d);
        d *= k;
    }
    return levels;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Found: return "found";
    case Verdict::NotFound: return "not_found";
    case Verdict::Timeout: return "timeout";
    }
    return "unknown";
}

std::string to_string(Mode m)
{
    return m == Mode::Lian ? "lian" : "elian";
}

std::vector<Cell> delta_successors(const Grid& grid, Cell at, double delta, Cell goal,
                                   CircleCache& circles)
{
    const int radius = std::max(1, static_cast<int>(std::lround(delta)));
    std::vector<Cell> out;
    bool goal_listed = false;
    for (const Offset o : circles.get(radius)) {
        const Cell c{at.col + o.dcol, at.row + o.drow};
        if (!grid.in_bounds(c)) continue;
        goal_listed = goal_listed || c == goal;
        out.push_back(c);
    }
    if (!goal_listed && euclid(at, goal) < delta) out.push_back(goal);
    return out;
}

bool Search::OpenOrder::operator()(const OpenEntry& a, const OpenEntry& b) const
{
    // priority_queue keeps the "largest" on top; return true when a ranks after b.
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    if (a.cell != b.cell) return a.cell > b.cell;
    if (a.parent_cell != b.parent_cell) return a.parent_cell > b.parent_cell;
    if (a.level != b.level) return a.level > b.level;
    return a.seq > b.seq;
}

Search::Search(const Grid& grid, Cell start, Cell goal, PlannerConfig cfg)
    : grid_(grid), start_(start), goal_(goal), cfg_(cfg)
{
    cfg_.validate();
    if (!is_traversable(grid_, start_)) throw std::invalid_argument("start cell is blocked or out of bounds");
    if (!is_traversable(grid_, goal_)) throw std::invalid_argument("goal cell is blocked or out of bounds");
    levels_ = cfg_.delta_levels();

    const double cells = static_cast<double>(grid_.width()) * grid_.height() + 1.0;
    if (cells * cells * 2.0 * static_cast<double>(levels_.size()) >
        static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2))
        throw std::invalid_argument("grid too large for node keys");
}

std::uint64_t Search::pair_key(Cell cell, NodeId parent) const
{
    const auto cells = static_cast<std::uint64_t>(grid_.width()) * static_cast<std::uint64_t>(grid_.height()) + 1;
    const std::uint64_t parent_idx =
        parent == kNoNode ? 0 : grid_.index(nodes_[static_cast<std::size_t>(parent)].cell) + 1;
    return grid_.index(cell) * cells + parent_idx;
}

bool Search::closed_contains(Cell cell, std::optional<Cell> parent) const
{
    const auto cells = static_cast<std::uint64_t>(grid_.width()) * static_cast<std::uint64_t>(grid_.height()) + 1;
    const std::uint64_t parent_idx = parent ? grid_.index(*parent) + 1 : 0;
    return closed_.contains(grid_.index(cell) * cells + parent_idx);
}

bool Search::growth_eligible(NodeId id) const
{
    const SearchNode& n = nodes_[static_cast<std::size_t>(id)];
    if (n.level == 0 || n.parent == kNoNode) return false;
    NodeId cur = n.parent;
    for (int i = 1; i < cfg_.success_streak; ++i) {
        if (cur == kNoNode) return false;
        if (nodes_[static_cast<std::size_t>(cur)].level != n.level) return false;
        cur = nodes_[static_cast<std::size_t>(cur)].parent;
    }
    return true;
}

void Search::push_entry(NodeId id)
{
    const SearchNode& n = nodes_[static_cast<std::size_t>(id)];
    const Cell parent_cell = n.parent == kNoNode ? Cell{-1, -1} : nodes_[static_cast<std::size_t>(n.parent)].cell;
    open_.push(OpenEntry{n.f, n.g, n.cell, parent_cell, n.level, seq_++, id});
    stats_.max_open = std::max<std::uint64_t>(stats_.max_open, open_.size());
}

NodeId Search::push_node(Cell cell, NodeId parent, int level)
{
    if (level < 0 || static_cast<std::size_t>(level) >= levels_.size())
        throw std::out_of_range("segment-length level out of range");
    SearchNode n;
    n.cell = cell;
    n.parent = parent;
    n.level = level;
    if (parent != kNoNode) {
        const SearchNode& p = nodes_.at(static_cast<std::size_t>(parent));
        n.g = p.g + euclid(p.cell, cell);
    }
    n.f = n.g + cfg_.weight * euclid(cell, goal_);
    nodes_.push_back(n);
    const auto id = static_cast<NodeId>(nodes_.size() - 1);
    push_entry(id);
    return id;
}

std::optional<NodeId> Search::pop()
{
    while (!open_.empty()) {
        const NodeId id = open_.top().id;
        open_.pop();
        const SearchNode& n = nodes_[static_cast<std::size_t>(id)];
        const std::uint64_t pair = pair_key(n.cell, n.parent);
        const std::uint64_t key =
            (pair * levels_.size() + static_cast<std::uint64_t>(n.level)) * 2 + (growth_eligible(id) ? 1 : 0);
        if (!expanded_.insert(key).second) continue;
        closed_.insert(pair);
        return id;
    }
    return std::nullopt;
}

ExpandResult Search::expand(NodeId id)
{
    const SearchNode n = nodes_.at(static_cast<std::size_t>(id));
    if (observer_) observer_(n);
    ++stats_.expansions;

    const std::optional<Cell> parent_cell =
        n.parent == kNoNode ? std::nullopt : std::optional<Cell>(nodes_[static_cast<std::size_t>(n.parent)].cell);
    const auto cells = static_cast<std::uint64_t>(grid_.width()) * static_cast<std::uint64_t>(grid_.height()) + 1;
    const std::uint64_t own_idx = grid_.index(n.cell) + 1;

    std::vector<Cell> survivors;
    for (const Cell c : delta_successors(grid_, n.cell, levels_[static_cast<std::size_t>(n.level)], goal_, circles_)) {
        if (parent_cell && !within_angle(turn_angle(*parent_cell, n.cell, c), cfg_.alpha_max)) continue;
        if (!line_of_sight(grid_, n.cell, c)) continue;
        if (closed_.contains(grid_.index(c) * cells + own_idx)) continue;
        survivors.push_back(c);
    }

    if (survivors.empty()) {
        if (static_cast<std::size_t>(n.level) + 1 < levels_.size()) {
            nodes_[static_cast<std::size_t>(id)].level = n.level + 1;
            ++stats_.reinsertions;
            push_entry(id);
            return ExpandResult::Reinserted;
        }
        return ExpandResult::Discarded;
    }

    const int child_level = growth_eligible(id) ? n.level - 1 : n.level;
    for (const Cell c : survivors) {
        push_node(c, id, child_level);
        ++stats_.generated;
    }
    return ExpandResult::Expanded;
}

std::vector<Cell> Search::reconstruct_path(NodeId id) const
{
    std::vector<Cell> path;
    for (NodeId cur = id; cur != kNoNode; cur = nodes_.at(static_cast<std::size_t>(cur)).parent)
        path.push_back(nodes_[static_cast<std::size_t>(cur)].cell);
    std::reverse(path.begin(), path.end());
    return path;
}

Outcome Search::run()
{
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    if (nodes_.empty()) push_node(start_, kNoNode, 0);

    Outcome out;
    auto finish = [&](Verdict v) {
        out.verdict = v;
        stats_.runtime = clock::now() - t0;
        out.stats = stats_;
        return out;
    };

    const bool capped = cfg_.time_cap.count() > 0.0;
    while (auto id = pop()) {
        if (capped && clock::now() - t0 >= cfg_.time_cap) return finish(Verdict::Timeout);
        if (nodes_[static_cast<std::size_t>(*id)].cell == goal_) {
            out.path = reconstruct_path(*id);
            return finish(Verdict::Found);
        }
        expand(*id);
    }
    return finish(Verdict::NotFound);
}

Outcome search(const Grid& grid, Cell start, Cell goal, const PlannerConfig& cfg)
{
    Search s(grid, start, goal, cfg);
    return s.run();
}

std::optional<PathViolation> validate_path(const Grid& grid, std::span<const Cell> path, Degrees alpha_max)
{
    if (path.size() < 2) throw std::invalid_argument("path must have at least two waypoints");
    auto at = [](Cell c) { return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")"; };

    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] == path[i + 1])
            return PathViolation{PathViolation::Kind::Degenerate, i,
                                 "zero-length segment at " + at(path[i])};
        if (i > 0) {
            const Degrees turn = turn_angle(path[i - 1], path[i], path[i + 1]);
            if (!within_angle(turn, alpha_max))
                return PathViolation{PathViolation::Kind::Angle, i,
                                     "turn of " + std::to_string(turn.value) + " deg at " + at(path[i]) +
                                         " exceeds " + std::to_string(alpha_max.value)};
        }
        if (!line_of_sight(grid, path[i], path[i + 1]))
            return PathViolation{PathViolation::Kind::LineOfSight, i,
                                 "no line of sight " + at(path[i]) + " -> " + at(path[i + 1])};
    }
    return std::nullopt;
}

}  // namespace elian
