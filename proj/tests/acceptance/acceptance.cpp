// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   elian_acceptance [--only 1,2,...] [--maps-dir DIR] [--jobs N]
//
// Criteria 6 and 7 need MovingAI maps and scenarios (*.map + *.map.scen) in
// the maps directory, default $ELIAN_MOVINGAI_DIR or data/movingai.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elian/geometry.hpp"
#include "elian/grid.hpp"
#include "elian/harness.hpp"
#include "elian/planner.hpp"
#include "elian/report.hpp"
#include "support/corridors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace elian;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
    bool pass = false;
    std::string detail;
};

// Expansion counts against W*H*|circle(r_max)|*L*4, shared by every suite.
struct BoundTracker {
    std::uint64_t searches = 0;
    std::uint64_t over = 0;
    double worst_ratio = 0.0;

    void note(const Grid& g, const PlannerConfig& cfg, std::uint64_t expansions)
    {
        const auto levels = cfg.delta_levels();
        const int r_max = std::max(1, static_cast<int>(std::lround(levels.front())));
        const double bound = static_cast<double>(g.width()) * g.height() *
                             static_cast<double>(circle_offsets(r_max).size()) * levels.size() * 4.0;
        ++searches;
        const double ratio = static_cast<double>(expansions) / bound;
        worst_ratio = std::max(worst_ratio, ratio);
        over += ratio > 1.0;
    }
};

BoundTracker g_bound;

Outcome tracked(const Grid& g, Cell s, Cell t, const PlannerConfig& cfg)
{
    Outcome out = search(g, s, t, cfg);
    g_bound.note(g, cfg, out.stats.expansions);
    return out;
}

std::string fmt(double v, int prec = 2)
{
    std::ostringstream o;
    o << std::fixed << std::setprecision(prec) << v;
    return o.str();
}

Result soundness()
{
    std::mt19937_64 rng(1001);
    const double alphas[] = {20, 25, 30, 45};
    int instances = 0;
    std::uint64_t found = 0;
    std::uint64_t violations = 0;
    std::string first;
    while (instances < 2000) {
        std::uniform_int_distribution<int> side(16, 64);
        std::uniform_real_distribution<double> dens(0.0, 0.4);
        const Grid g = testgen::random_grid(rng, side(rng), side(rng), dens(rng));
        const auto ends = testgen::random_endpoints(rng, g);
        if (!ends) continue;
        const Degrees alpha{alphas[instances % 4]};
        const double w = instances % 2 ? 2.0 : 1.0;
        ++instances;
        for (const auto& cfg :
             {PlannerConfig::lian(20, alpha, w), PlannerConfig::elian(20, 10, 0.5, alpha, w),
              PlannerConfig::elian(20, 5, 0.5, alpha, w), PlannerConfig::lian(5, alpha, w),
              PlannerConfig::elian(8, 2, 0.5, alpha, w)}) {
            const Outcome out = tracked(g, ends->first, ends->second, cfg);
            if (out.verdict != Verdict::Found) continue;
            ++found;
            bool bad = out.path.front() != ends->first || out.path.back() != ends->second;
            if (out.path.size() >= 2) {
                const auto v = validate_path(g, out.path, alpha);
                if (v && first.empty()) first = v->description;
                bad = bad || v.has_value();
            }
            violations += bad;
        }
    }
    return {violations == 0 && found > 0, std::to_string(instances) + " instances x 5 configs, " +
                                               std::to_string(found) + " found paths, " +
                                               std::to_string(violations) + " violations" +
                                               (first.empty() ? "" : " (first: " + first + ")")};
}

Result degenerate_equivalence()
{
    std::mt19937_64 rng(2002);
    int instances = 0;
    int mismatches = 0;
    int found = 0;
    while (instances < 500) {
        std::uniform_int_distribution<int> side(16, 48);
        std::uniform_real_distribution<double> dens(0.0, 0.4);
        const Grid g = testgen::random_grid(rng, side(rng), side(rng), dens(rng));
        const auto ends = testgen::random_endpoints(rng, g);
        if (!ends) continue;
        ++instances;
        const double delta = std::uniform_int_distribution<int>(2, 20)(rng);
        const Degrees alpha{std::uniform_int_distribution<int>(4, 18)(rng) * 5.0};
        const double w = instances % 2 ? 2.0 : 1.0;

        using Step = std::pair<Cell, Cell>;
        auto run = [&](const PlannerConfig& cfg, std::vector<Step>& seq) {
            Search s(g, ends->first, ends->second, cfg);
            s.set_expansion_observer([&](const SearchNode& n) {
                seq.push_back({n.cell, n.parent == kNoNode ? Cell{-1, -1} : s.node(n.parent).cell});
            });
            Outcome out = s.run();
            g_bound.note(g, cfg, out.stats.expansions);
            return out;
        };
        std::vector<Step> sa;
        std::vector<Step> sb;
        const Outcome a = run(PlannerConfig::lian(delta, alpha, w), sa);
        const Outcome b = run(PlannerConfig::elian(delta, delta, 0.5, alpha, w), sb);
        found += a.verdict == Verdict::Found;
        mismatches += !(a.verdict == b.verdict && a.path == b.path && a.stats.expansions == b.stats.expansions &&
                        sa == sb);
    }
    return {mismatches == 0, std::to_string(instances) + " instances (" + std::to_string(found) +
                                 " found), " + std::to_string(mismatches) +
                                 " mismatches in verdict/path/expansions/order"};
}

Result oracle_equivalence()
{
    std::mt19937_64 rng(3003);
    const double alphas[] = {20, 25, 30, 45};
    int grids = 0;
    int comparisons = 0;
    int feasible = 0;
    int mismatches = 0;
    while (grids < 200) {
        std::uniform_int_distribution<int> side(4, 20);
        std::uniform_real_distribution<double> dens(0.0, 0.35);
        const Grid g = testgen::random_grid(rng, side(rng), side(rng), dens(rng));
        const auto ends = testgen::random_endpoints(rng, g);
        if (!ends) continue;
        ++grids;
        for (const int delta : {2, 3, 4}) {
            const Degrees alpha{alphas[(grids + delta) % 4]};
            const bool expect = oracle::reachable(g, ends->first, ends->second, {delta}, alpha);
            const Outcome out = tracked(g, ends->first, ends->second, PlannerConfig::lian(delta, alpha, 1.0));
            ++comparisons;
            feasible += expect;
            mismatches += (out.verdict == Verdict::Found) != expect;
        }
    }
    return {mismatches == 0, std::to_string(grids) + " grids, " + std::to_string(comparisons) +
                                 " comparisons (" + std::to_string(feasible) + " feasible), " +
                                 std::to_string(mismatches) + " mismatches"};
}

Result property2()
{
    const std::pair<int, int> dirs[] = {{20, 0}, {0, 20}, {-20, 0}, {0, -20}, {16, 12}, {-12, 16}, {12, -16}};
    int runs = 0;
    int solved = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const auto& [dc, dr] : dirs) {
            const int span = 20 * n + 4;
            const Grid g = Grid::empty(2 * span + 1, 2 * span + 1);
            const Cell s{span, span};
            const Cell t{span + dc * n, span + dr * n};
            for (const auto& cfg : {PlannerConfig::lian(20, Degrees{20}, 2.0),
                                    PlannerConfig::elian(20, 5, 0.5, Degrees{20}, 2.0),
                                    PlannerConfig::elian(20, 10, 0.5, Degrees{20}, 1.0)}) {
                ++runs;
                solved += tracked(g, s, t, cfg).verdict == Verdict::Found;
            }
        }
    }
    return {solved == runs, std::to_string(solved) + "/" + std::to_string(runs) +
                                " straight instances at n*20 (n=1..5, 7 headings) solved"};
}

Result corridor_suite()
{
    const Degrees alpha{25};
    const auto draw = testgen::corridor_suite(1, 20, 8, 4, alpha);
    int lian_fail = 0;
    int both = 0;
    for (const auto& c : draw.cases) {
        const bool lian = tracked(c.grid, c.start, c.goal, PlannerConfig::lian(8, alpha)).verdict == Verdict::Found;
        const bool el =
            tracked(c.grid, c.start, c.goal, PlannerConfig::elian(8, 4, 0.5, alpha)).verdict == Verdict::Found;
        lian_fail += !lian;
        both += !lian && el;
    }
    const bool ok = draw.cases.size() == 20 && both >= 18;
    return {ok, std::to_string(draw.cases.size()) + " oracle-verified maps (" + std::to_string(draw.attempts) +
                    " drawn), LIAN-8 not found on " + std::to_string(lian_fail) +
                    ", LIAN-8 not found and eLIAN-8-4 found on " + std::to_string(both) + " (need 18)"};
}

struct Benchmark {
    bool available = false;
    std::string why;
    std::size_t maps = 0;
    std::size_t instances = 0;
    double seconds = 0.0;
    AggregateReport report;
};

Benchmark run_movingai(const std::string& dir, int jobs)
{
    Benchmark b;
    std::vector<ScenarioSet> sets;
    std::map<std::string, Grid> grids;
    if (fs::is_directory(dir)) {
        std::vector<fs::path> scens;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".scen") scens.push_back(e.path());
        std::sort(scens.begin(), scens.end());
        const MapResolver resolve = directory_resolver(dir);
        for (const auto& p : scens) {
            try {
                ScenarioSet set = load_scen(p.string());
                grids.emplace(set.map_id, resolve(set.map_id));
                // hardest 20 by bucket, then by reference length
                std::stable_sort(set.instances.begin(), set.instances.end(), [](const Instance& x, const Instance& y) {
                    return std::tuple(x.bucket.value_or(0), x.reference_length.value_or(0)) >
                           std::tuple(y.bucket.value_or(0), y.reference_length.value_or(0));
                });
                if (set.instances.size() > 20) set.instances.resize(20);
                sets.push_back(std::move(set));
            } catch (const std::exception& e) {
                std::cerr << "skipping " << p << ": " << e.what() << '\n';
            }
        }
    }
    if (sets.size() < 5) {
        b.why = "found " + std::to_string(sets.size()) + " usable MovingAI map/scenario pairs under '" + dir +
                "', need 5";
        return b;
    }
    const std::vector<double> alphas{20, 25, 30};
    const auto configs = default_configs(alphas, 2.0, 30.0);
    const MapResolver cached = [&](const std::string& id) { return grids.at(id); };
    const auto t0 = Clock::now();
    const BatchResult r = run_batch(sets, cached, configs, jobs);
    b.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    for (const auto& e : r.errors) std::cerr << "batch error: " << e.source << ": " << e.message << '\n';
    for (const auto& rec : r.records)
        g_bound.note(grids.at(rec.instance_id.substr(0, rec.instance_id.rfind(':'))), rec.config, rec.expansions);
    b.available = true;
    b.maps = sets.size();
    for (const auto& s : sets) b.instances += s.instances.size();
    b.report = aggregate(r.records, "LIAN-20");
    std::cerr << emit_report(b.report, ReportFormat::Csv);
    return b;
}

const ReportRow* row_of(const AggregateReport& rep, const std::string& label, double alpha)
{
    for (const auto& r : rep.rows)
        if (r.label == label && r.alpha == alpha) return &r;
    return nullptr;
}

Result benchmark_trend(const Benchmark& b)
{
    if (!b.available) return {false, "not run: " + b.why};
    bool ok = true;
    std::string detail;
    for (const double a : {20.0, 25.0, 30.0}) {
        const auto* l = row_of(b.report, "LIAN-20", a);
        const auto* e10 = row_of(b.report, "eLIAN-20-10", a);
        const auto* e5 = row_of(b.report, "eLIAN-20-5", a);
        if (!l || !e10 || !e5) return {false, "missing report rows"};
        ok = ok && e5->success_rate >= e10->success_rate && e10->success_rate >= l->success_rate;
        if (a == 20.0) ok = ok && e5->success_rate > l->success_rate;
        detail += fmt(a, 0) + "deg: " + fmt(l->success_rate) + "/" + fmt(e10->success_rate) + "/" +
                  fmt(e5->success_rate) + "%  ";
    }
    return {ok, std::to_string(b.maps) + " maps, " + std::to_string(b.instances) + " instances, batch " +
                    fmt(b.seconds, 1) + " s; LIAN-20/eLIAN-20-10/eLIAN-20-5 success " + detail};
}

Result quality_parity(const Benchmark& b)
{
    if (!b.available) return {false, "not run: " + b.why};
    bool ok = true;
    std::string detail;
    for (const double a : {20.0, 25.0, 30.0}) {
        const auto* l = row_of(b.report, "LIAN-20", a);
        const auto* e5 = row_of(b.report, "eLIAN-20-5", a);
        if (!l || !e5 || !l->mean_path_length || !e5->mean_path_length) {
            ok = false;
            detail += fmt(a, 0) + "deg: empty common set  ";
            continue;
        }
        const double rel = *e5->mean_path_length / *l->mean_path_length - 1.0;
        ok = ok && std::abs(rel) <= 0.05 && *e5->mean_accumulated_angle >= *l->mean_accumulated_angle;
        detail += fmt(a, 0) + "deg: length " + fmt(100 * rel) + "%, angle " + fmt(*l->mean_accumulated_angle) +
                  " -> " + fmt(*e5->mean_accumulated_angle) + "  ";
    }
    return {ok, detail};
}

Result termination_bound(bool benchmark_ran)
{
    return {g_bound.over == 0 && g_bound.searches > 0,
            std::to_string(g_bound.searches) + " searches" +
                (benchmark_ran ? "" : " (benchmark suite not run)") + ", " + std::to_string(g_bound.over) +
                " over bound, worst expansions/bound = " + fmt(g_bound.worst_ratio, 6)};
}

Result geometry_micro()
{
    int circle_bad = 0;
    for (int r = 0; r <= 64; ++r) {
        std::set<std::pair<int, int>> got;
        for (const Offset o : circle_offsets(r)) got.insert({o.dcol, o.drow});
        circle_bad += got != oracle::circle_points(r);
    }

    std::mt19937_64 rng(9009);
    std::uint64_t pairs = 0;
    std::uint64_t los_bad = 0;
    for (int t = 0; t < 50; ++t) {
        const double dens = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
        const Grid g = testgen::random_grid(rng, 16, 16, dens);
        for (int a = 0; a < 256; ++a)
            for (int b = 0; b < 256; ++b) {
                const Cell ca{a % 16, a / 16};
                const Cell cb{b % 16, b / 16};
                ++pairs;
                los_bad += line_of_sight(g, ca, cb) != oracle::line_of_sight(g, ca, cb);
            }
    }

    // Closed forms: acos of the normalized dot product, and the atan of slopes.
    struct Case {
        Cell p, m, n;
        double deg;
    };
    const double r2d = 180.0 / std::numbers::pi;
    const Case cases[] = {
        {{0, 0}, {1, 0}, {2, 0}, 0.0},
        {{0, 0}, {1, 0}, {1, 1}, 90.0},
        {{0, 0}, {1, 0}, {0, 0}, 180.0},
        {{0, 0}, {1, 0}, {2, 1}, 45.0},
        {{0, 0}, {2, 0}, {4, 1}, std::atan(0.5) * r2d},
        {{0, 0}, {3, 0}, {6, 1}, std::atan(1.0 / 3.0) * r2d},
        {{0, 0}, {1, 1}, {2, 1}, 45.0},
        {{0, 0}, {4, 3}, {4, 8}, std::acos(3.0 / 5.0) * r2d},
        {{5, 5}, {5, 0}, {10, -5}, 45.0},
        {{0, 0}, {20, 0}, {36, 12}, std::atan2(12.0, 16.0) * r2d},
        {{0, 0}, {1, 2}, {3, 1}, std::acos(0.0) * r2d},
        {{0, 0}, {8, 0}, {15, 3}, std::atan2(3.0, 7.0) * r2d},
    };
    int angle_bad = 0;
    for (const Case& c : cases) angle_bad += std::abs(turn_angle(c.p, c.m, c.n).value - c.deg) > 1e-9;

    return {circle_bad == 0 && los_bad == 0 && angle_bad == 0,
            "circle r=0..64: " + std::to_string(circle_bad) + " mismatches; line of sight: " +
                std::to_string(pairs) + " pairs on 50 grids, " + std::to_string(los_bad) +
                " mismatches; turn_angle: " + std::to_string(angle_bad) + "/" + std::to_string(std::size(cases)) +
                " off by > 1e-9"};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    std::string maps_dir;
    if (const char* env = std::getenv("ELIAN_MOVINGAI_DIR")) maps_dir = env;
#ifdef ELIAN_DEFAULT_MOVINGAI_DIR
    if (maps_dir.empty()) maps_dir = ELIAN_DEFAULT_MOVINGAI_DIR;
#endif
    int jobs = 4;
    app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
    app.add_option("--maps-dir", maps_dir, "MovingAI maps and scenarios")->capture_default_str();
    app.add_option("--jobs", jobs, "Parallel searches for the benchmark suite")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    auto selected = [&](int c) { return only.empty() || std::count(only.begin(), only.end(), c) > 0; };
    int failures = 0;
    auto report = [&](int id, const char* name, auto&& fn) {
        if (!selected(id)) return;
        const auto t0 = Clock::now();
        const Result v = fn();
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        failures += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << id << " [" << name << "] " << v.detail << " ("
                  << fmt(secs, 1) << " s)" << std::endl;
    };

    report(9, "geometry micro-suite", geometry_micro);
    report(1, "soundness", soundness);
    report(2, "degenerate equivalence", degenerate_equivalence);
    report(3, "oracle equivalence", oracle_equivalence);
    report(4, "delta_max straight lines", property2);
    report(5, "corridor suite", corridor_suite);

    Benchmark bench;
    if (selected(6) || selected(7)) bench = run_movingai(maps_dir, jobs);
    report(6, "benchmark success ordering", [&] { return benchmark_trend(bench); });
    report(7, "benchmark quality parity", [&] { return quality_parity(bench); });
    report(8, "termination bound", [&] { return termination_bound(bench.available); });

    return failures == 0 ? 0 : 1;
}
