// Command-line front end: `elian plan` for a single instance and
// `elian bench` for scenario batches.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "elian/grid.hpp"
#include "elian/harness.hpp"
#include "elian/planner.hpp"
#include "elian/report.hpp"
#include "elian/svg.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitInputError = 3;

elian::Cell parse_cell(const std::string& text)
{
    int col = 0;
    int row = 0;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> col >> sep >> row) || sep != ',' || !in.eof())
        throw std::invalid_argument("expected COL,ROW but got '" + text + "'");
    return {col, row};
}

struct PlanArgs {
    std::string map;
    std::string start;
    std::string goal;
    std::string alg = "elian";
    double delta_max = 20.0;
    double delta_min = -1.0;
    double k = 0.5;
    double angle = 25.0;
    double hweight = 2.0;
    double timeout = 30.0;
    int streak = 2;
    std::string svg;
};

struct BenchArgs {
    std::vector<std::string> scen;
    std::string maps_dir = ".";
    std::string configs;
    std::vector<double> angles{20.0, 25.0, 30.0};
    double hweight = 2.0;
    double timeout = 30.0;
    int jobs = 1;
    std::string out = "bench";
    std::string format = "csv";
    std::string baseline = "LIAN-20";
};

int run_plan(const PlanArgs& a)
{
    elian::Grid grid = elian::load_grid(a.map);
    const elian::Cell start = parse_cell(a.start);
    const elian::Cell goal = parse_cell(a.goal);

    elian::PlannerConfig cfg;
    cfg.mode = a.alg == "lian" ? elian::Mode::Lian : elian::Mode::Elian;
    cfg.delta_max = a.delta_max;
    cfg.delta_min = a.delta_min > 0 ? a.delta_min : (cfg.mode == elian::Mode::Lian ? a.delta_max : a.delta_max / 4);
    cfg.k = a.k;
    cfg.alpha_max = elian::Degrees{a.angle};
    cfg.weight = a.hweight;
    cfg.time_cap = std::chrono::duration<double>(a.timeout);
    cfg.success_streak = a.streak;

    const elian::Outcome out = elian::search(grid, start, goal, cfg);
    std::cout << "verdict: " << elian::to_string(out.verdict) << '\n';
    std::cout << "expansions: " << out.stats.expansions << "  generated: " << out.stats.generated
              << "  reinsertions: " << out.stats.reinsertions << "  max_open: " << out.stats.max_open
              << "  runtime_s: " << out.stats.runtime.count() << '\n';
    if (out.verdict == elian::Verdict::Found) {
        std::cout << "length: " << elian::path_length(out.path)
                  << "  accumulated_angle_deg: " << elian::accumulated_angle(out.path) << '\n';
        std::cout << "path:";
        for (const elian::Cell c : out.path) std::cout << ' ' << c.col << ',' << c.row;
        std::cout << '\n';
    }
    if (!a.svg.empty()) {
        std::ofstream svg(a.svg);
        if (!svg) throw std::runtime_error("cannot write '" + a.svg + "'");
        elian::render_svg(grid, out.path, svg);
    }
    switch (out.verdict) {
    case elian::Verdict::Found: return kExitFound;
    case elian::Verdict::NotFound: return kExitNotFound;
    case elian::Verdict::Timeout: return kExitTimeout;
    }
    return kExitInputError;
}

int run_bench(const BenchArgs& a)
{
    std::vector<elian::ScenarioSet> sets;
    for (const auto& path : a.scen) sets.push_back(elian::load_scen(path));

    std::vector<elian::NamedConfig> configs;
    if (!a.configs.empty()) {
        std::ifstream in(a.configs);
        if (!in) throw std::runtime_error("cannot open config file '" + a.configs + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        configs = elian::parse_configs(ss.str());
    } else {
        configs = elian::default_configs(a.angles, a.hweight, a.timeout);
    }

    const std::string records_path = a.out + ".records.jsonl";
    std::ofstream records(records_path);
    if (!records) throw std::runtime_error("cannot write '" + records_path + "'");
    const elian::BatchResult result =
        elian::run_batch(sets, elian::directory_resolver(a.maps_dir), configs, a.jobs,
                         [&](const elian::RunRecord& r) {
                             elian::write_record_jsonl(records, r);
                             records.flush();
                         });
    for (const auto& e : result.errors) std::cerr << "error: " << e.source << ": " << e.message << '\n';
    if (result.records.empty()) {
        std::cerr << "no records produced\n";
        return kExitInputError;
    }

    const auto format = a.format == "json" ? elian::ReportFormat::Json : elian::ReportFormat::Csv;
    const std::string report = elian::emit_report(elian::aggregate(result.records, a.baseline), format);
    const std::string report_path = a.out + ".report." + a.format;
    std::ofstream(report_path) << report;
    std::cout << report;
    std::cerr << result.records.size() << " records -> " << records_path << ", report -> " << report_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Angle-constrained grid path planning with LIAN / eLIAN"};
    app.require_subcommand(1);

    PlanArgs plan;
    auto* plan_cmd = app.add_subcommand("plan", "Solve one instance");
    plan_cmd->add_option("--map", plan.map, "Map file (MovingAI .map or ASCII '#'/'.')")->required();
    plan_cmd->add_option("--start", plan.start, "Start cell COL,ROW")->required();
    plan_cmd->add_option("--goal", plan.goal, "Goal cell COL,ROW")->required();
    plan_cmd->add_option("--alg", plan.alg, "lian | elian")->check(CLI::IsMember({"lian", "elian"}))->capture_default_str();
    plan_cmd->add_option("--delta-max", plan.delta_max, "Longest segment length")->capture_default_str();
    plan_cmd->add_option("--delta-min", plan.delta_min, "Shortest segment length (eLIAN; default delta-max/4)");
    plan_cmd->add_option("--k", plan.k, "Segment shrink factor in (0,1)")->capture_default_str();
    plan_cmd->add_option("--angle", plan.angle, "Maximum turn in degrees")->capture_default_str();
    plan_cmd->add_option("--hweight", plan.hweight, "Heuristic weight")->capture_default_str();
    plan_cmd->add_option("--timeout", plan.timeout, "Time cap in seconds, 0 = none")->capture_default_str();
    plan_cmd->add_option("--streak", plan.streak, "Equal-length segments before growing back")->capture_default_str();
    plan_cmd->add_option("--svg", plan.svg, "Write an SVG drawing of the result");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run scenario batches and aggregate");
    bench_cmd->add_option("--scen", bench.scen, "MovingAI .scen files")->required();
    bench_cmd->add_option("--maps-dir", bench.maps_dir, "Directory holding the referenced maps")->capture_default_str();
    bench_cmd->add_option("--configs", bench.configs, "JSON file with labelled planner configs");
    bench_cmd->add_option("--angles", bench.angles, "Angle limits for the default configs")->capture_default_str();
    bench_cmd->add_option("--hweight", bench.hweight, "Heuristic weight for the default configs")->capture_default_str();
    bench_cmd->add_option("--timeout", bench.timeout, "Per-run time cap for the default configs")->capture_default_str();
    bench_cmd->add_option("--jobs", bench.jobs, "Parallel searches")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Output prefix")->capture_default_str();
    bench_cmd->add_option("--format", bench.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    bench_cmd->add_option("--baseline", bench.baseline, "Baseline label for relative columns")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*plan_cmd) return run_plan(plan);
        return run_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}
