#include "elian/grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace elian {

namespace {

std::string strip_cr(std::string line)
{
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

std::vector<std::string> split_ws(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

bool all_space(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); });
}

template <typename T>
std::optional<T> parse_number(const std::string& s)
{
    T value{};
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::optional<bool> terrain_blocked(char ch)
{
    switch (ch) {
    case '.':
    case 'G':
    case 'S':
        return false;
    case '@':
    case 'O':
    case 'T':
    case 'W':
        return true;
    default:
        return std::nullopt;
    }
}

int header_value(const std::string& line, std::size_t lineno, const char* key)
{
    const auto toks = split_ws(line);
    if (toks.size() != 2 || toks[0] != key)
        throw ParseError(lineno, std::string("expected '") + key + " <n>', got '" + line + "'");
    const auto v = parse_number<int>(toks[1]);
    if (!v || *v <= 0)
        throw ParseError(lineno, std::string("bad ") + key + " value '" + toks[1] + "'");
    return *v;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

Grid::Grid(int width, int height, std::vector<std::uint8_t> blocked)
    : width_(width), height_(height), blocked_(std::move(blocked))
{
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
    if (blocked_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("blocked matrix size does not match width*height");
}

Grid Grid::empty(int width, int height)
{
    return Grid(width, height,
                std::vector<std::uint8_t>(static_cast<std::size_t>(width) *
                                          static_cast<std::size_t>(height)));
}

std::size_t Grid::blocked_count() const noexcept
{
    return static_cast<std::size_t>(std::count(blocked_.begin(), blocked_.end(), 1));
}

Grid Grid::with_blocked(Cell c, bool value) const
{
    if (!in_bounds(c)) throw std::out_of_range("cell outside grid");
    auto copy = blocked_;
    copy[index(c)] = value ? 1 : 0;
    return Grid(width_, height_, std::move(copy));
}

bool is_traversable(const Grid& grid, Cell c) noexcept
{
    return grid.in_bounds(c) && !grid.blocked(c);
}

std::string Instance::id() const
{
    return map_id + ":" + std::to_string(index);
}

Grid parse_map(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        line = strip_cr(line);
        return true;
    };

    if (!next()) throw ParseError(1, "empty input");
    {
        const auto toks = split_ws(line);
        if (toks.size() != 2 || toks[0] != "type")
            throw ParseError(lineno, "expected 'type <name>' header");
    }

    int height = 0;
    int width = 0;
    for (int i = 0; i < 2; ++i) {
        if (!next()) throw ParseError(lineno + 1, "truncated header");
        const auto toks = split_ws(line);
        if (!toks.empty() && toks[0] == "height" && height == 0)
            height = header_value(line, lineno, "height");
        else if (!toks.empty() && toks[0] == "width" && width == 0)
            width = header_value(line, lineno, "width");
        else
            throw ParseError(lineno, "expected height/width header, got '" + line + "'");
    }
    if (!next() || line != "map") throw ParseError(lineno, "expected 'map' line");

    std::vector<std::uint8_t> blocked;
    blocked.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r) {
        if (!next())
            throw ParseError(lineno + 1, "expected " + std::to_string(height) + " map rows, got " +
                                             std::to_string(r));
        if (static_cast<int>(line.size()) != width)
            throw ParseError(lineno, "row length " + std::to_string(line.size()) +
                                         " != width " + std::to_string(width));
        for (std::size_t c = 0; c < line.size(); ++c) {
            const auto b = terrain_blocked(line[c]);
            if (!b)
                throw ParseError(lineno, std::string("unknown terrain character '") + line[c] +
                                             "' at column " + std::to_string(c));
            blocked.push_back(*b ? 1 : 0);
        }
    }
    while (next()) {
        if (!all_space(line)) throw ParseError(lineno, "extra map row beyond declared height");
    }
    return Grid(width, height, std::move(blocked));
}

Grid parse_ascii_grid(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::uint8_t> blocked;
    int width = -1;
    int height = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (width < 0) width = static_cast<int>(line.size());
        if (static_cast<int>(line.size()) != width)
            throw ParseError(lineno, "row length " + std::to_string(line.size()) +
                                         " != " + std::to_string(width));
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (line[c] == '#')
                blocked.push_back(1);
            else if (line[c] == '.')
                blocked.push_back(0);
            else
                throw ParseError(lineno, std::string("unknown character '") + line[c] + "'");
        }
        ++height;
    }
    if (height == 0) throw ParseError(lineno, "empty grid");
    return Grid(width, height, std::move(blocked));
}

ScenarioSet parse_scen(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(1, "empty input");
    ++lineno;
    line = strip_cr(line);
    {
        const auto toks = split_ws(line);
        const auto ver = toks.size() == 2 ? parse_number<double>(toks[1]) : std::nullopt;
        if (toks.size() != 2 || toks[0] != "version" || !ver || *ver != 1.0)
            throw ParseError(lineno, "expected 'version 1' header, got '" + line + "'");
    }

    ScenarioSet set;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (all_space(line)) continue;
        const auto f = split_ws(line);
        if (f.size() != 9)
            throw ParseError(lineno, "expected 9 fields, got " + std::to_string(f.size()));

        const auto bucket = parse_number<int>(f[0]);
        const auto mw = parse_number<int>(f[2]);
        const auto mh = parse_number<int>(f[3]);
        const auto sc = parse_number<int>(f[4]);
        const auto sr = parse_number<int>(f[5]);
        const auto gc = parse_number<int>(f[6]);
        const auto gr = parse_number<int>(f[7]);
        const auto len = parse_number<double>(f[8]);
        if (!bucket || !mw || !mh || !sc || !sr || !gc || !gr || !len)
            throw ParseError(lineno, "non-numeric field in '" + line + "'");
        if (*mw <= 0 || *mh <= 0) throw ParseError(lineno, "non-positive map size");
        if (*len < 0) throw ParseError(lineno, "negative reference length");

        if (set.instances.empty()) {
            set.map_id = f[1];
            set.map_width = *mw;
            set.map_height = *mh;
        } else if (f[1] != set.map_id) {
            throw ParseError(lineno, "row names map '" + f[1] + "', expected '" + set.map_id + "'");
        }

        Instance inst;
        inst.map_id = f[1];
        inst.start = {*sc, *sr};
        inst.goal = {*gc, *gr};
        inst.bucket = *bucket;
        inst.reference_length = *len;
        inst.index = set.instances.size();
        auto inside = [&](Cell c) { return c.col >= 0 && c.row >= 0 && c.col < *mw && c.row < *mh; };
        if (!inside(inst.start) || !inside(inst.goal))
            throw ParseError(lineno, "start or goal outside declared map size");
        set.instances.push_back(std::move(inst));
    }
    return set;
}

Grid load_grid(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
    std::string first;
    std::getline(in, first);
    in.clear();
    in.seekg(0);
    try {
        if (first.rfind("type", 0) == 0) return parse_map(in);
        return parse_ascii_grid(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

ScenarioSet load_scen(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    try {
        return parse_scen(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string to_ascii(const Grid& grid)
{
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.width() + 1) * static_cast<std::size_t>(grid.height()));
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) out.push_back(grid.blocked({c, r}) ? '#' : '.');
        out.push_back('\n');
    }
    return out;
}

void check_instance(const Grid& grid, const Instance& inst)
{
    auto describe = [](Cell c) {
        return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
    };
    if (!is_traversable(grid, inst.start))
        throw std::invalid_argument("instance " + inst.id() + ": start " + describe(inst.start) +
                                    " is blocked or out of bounds");
    if (!is_traversable(grid, inst.goal))
        throw std::invalid_argument("instance " + inst.id() + ": goal " + describe(inst.goal) +
                                    " is blocked or out of bounds");
}

}  // namespace elian
