#include "elian/harness.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace elian {

using nlohmann::json;

namespace {

struct Job {
    std::size_t set;
    std::size_t instance;
    std::size_t config;
};

struct Prepared {
    std::vector<std::optional<Grid>> grids;
    std::vector<Job> jobs;
    std::vector<BatchError> errors;
};

Prepared prepare(std::span<const ScenarioSet> sets, const MapResolver& resolve,
                 std::span<const NamedConfig> configs)
{
    Prepared p;
    p.grids.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        try {
            p.grids.emplace_back(resolve(sets[s].map_id));
        } catch (const std::exception& e) {
            p.grids.emplace_back(std::nullopt);
            p.errors.push_back({sets[s].map_id, e.what()});
            continue;
        }
        const Grid& grid = *p.grids.back();
        for (std::size_t i = 0; i < sets[s].instances.size(); ++i) {
            try {
                check_instance(grid, sets[s].instances[i]);
            } catch (const std::exception& e) {
                p.errors.push_back({sets[s].instances[i].id(), e.what()});
                continue;
            }
            for (std::size_t c = 0; c < configs.size(); ++c) p.jobs.push_back({s, i, c});
        }
    }
    return p;
}

BatchResult collect(Prepared& p, std::vector<std::optional<RunRecord>>& slots,
                    std::vector<std::string>& failures, std::span<const ScenarioSet> sets)
{
    BatchResult out;
    out.errors = std::move(p.errors);
    out.records.reserve(slots.size());
    for (std::size_t j = 0; j < slots.size(); ++j) {
        if (slots[j])
            out.records.push_back(std::move(*slots[j]));
        else
            out.errors.push_back({sets[p.jobs[j].set].instances[p.jobs[j].instance].id(), failures[j]});
    }
    return out;
}

void run_job(std::span<const ScenarioSet> sets, std::span<const NamedConfig> configs, const Prepared& p,
             std::size_t j, std::vector<std::optional<RunRecord>>& slots, std::vector<std::string>& failures,
             const RecordSink& sink)
{
    const Job& job = p.jobs[j];
    try {
        slots[j] = run_instance(*p.grids[job.set], sets[job.set].instances[job.instance], configs[job.config]);
    } catch (const std::exception& e) {
        failures[j] = e.what();
        return;
    }
    if (sink) {
#pragma omp critical(elian_record_sink)
        sink(*slots[j]);
    }
}

json config_to_json(const PlannerConfig& c)
{
    return json{{"alg", to_string(c.mode)},
                {"delta_max", c.delta_max},
                {"delta_min", c.delta_min},
                {"k", c.k},
                {"angle", c.alpha_max.value},
                {"hweight", c.weight},
                {"timeout", c.time_cap.count()},
                {"streak", c.success_streak}};
}

PlannerConfig config_from_json(const json& j)
{
    PlannerConfig c;
    const std::string alg = j.value("alg", std::string("elian"));
    if (alg == "lian")
        c.mode = Mode::Lian;
    else if (alg == "elian")
        c.mode = Mode::Elian;
    else
        throw std::invalid_argument("unknown algorithm '" + alg + "'");
    c.delta_max = j.value("delta_max", 20.0);
    c.delta_min = j.value("delta_min", c.mode == Mode::Lian ? c.delta_max : 10.0);
    c.k = j.value("k", 0.5);
    c.alpha_max = Degrees{j.value("angle", 25.0)};
    c.weight = j.value("hweight", 2.0);
    c.time_cap = std::chrono::duration<double>(j.value("timeout", 30.0));
    c.success_streak = j.value("streak", 2);
    c.validate();
    return c;
}

}  // namespace

RunRecord run_instance(const Grid& grid, const Instance& inst, const NamedConfig& cfg)
{
    check_instance(grid, inst);
    Search search(grid, inst.start, inst.goal, cfg.config);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome = search.run();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    RunRecord rec;
    rec.instance_id = inst.id();
    rec.label = cfg.label;
    rec.config = cfg.config;
    rec.verdict = outcome.verdict;
    rec.runtime_s = elapsed.count();
    rec.expansions = outcome.stats.expansions;
    rec.reinsertions = outcome.stats.reinsertions;
    if (outcome.verdict == Verdict::Found) {
        rec.path_length = path_length(outcome.path);
        rec.accumulated_angle = accumulated_angle(outcome.path);
        rec.path = std::move(outcome.path);
    }
    return rec;
}

MapResolver directory_resolver(std::string dir)
{
    return [dir = std::move(dir)](const std::string& map_id) {
        namespace fs = std::filesystem;
        const fs::path base(dir);
        for (const fs::path& candidate : {base / map_id, base / fs::path(map_id).filename()}) {
            if (fs::is_regular_file(candidate)) return load_grid(candidate.string());
        }
        throw std::runtime_error("map '" + map_id + "' not found under '" + dir + "'");
    };
}

BatchResult run_batch_serial(std::span<const ScenarioSet> sets, const MapResolver& resolve,
                             std::span<const NamedConfig> configs, const RecordSink& sink)
{
    Prepared p = prepare(sets, resolve, configs);
    std::vector<std::optional<RunRecord>> slots(p.jobs.size());
    std::vector<std::string> failures(p.jobs.size());
    for (std::size_t j = 0; j < p.jobs.size(); ++j) run_job(sets, configs, p, j, slots, failures, sink);
    return collect(p, slots, failures, sets);
}

BatchResult run_batch(std::span<const ScenarioSet> sets, const MapResolver& resolve,
                      std::span<const NamedConfig> configs, int jobs, const RecordSink& sink)
{
    if (jobs <= 1) return run_batch_serial(sets, resolve, configs, sink);

    Prepared p = prepare(sets, resolve, configs);
    std::vector<std::optional<RunRecord>> slots(p.jobs.size());
    std::vector<std::string> failures(p.jobs.size());
    const auto n = static_cast<std::int64_t>(p.jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::int64_t j = 0; j < n; ++j)
        run_job(sets, configs, p, static_cast<std::size_t>(j), slots, failures, sink);
    return collect(p, slots, failures, sets);
}

std::vector<NamedConfig> default_configs(std::span<const double> alphas, double weight, double time_cap_s)
{
    std::vector<NamedConfig> out;
    for (const double a : alphas) {
        auto cap = [&](PlannerConfig c) {
            c.time_cap = std::chrono::duration<double>(time_cap_s);
            return c;
        };
        out.push_back({"LIAN-20", cap(PlannerConfig::lian(20, Degrees{a}, weight))});
        out.push_back({"eLIAN-20-10", cap(PlannerConfig::elian(20, 10, 0.5, Degrees{a}, weight))});
        out.push_back({"eLIAN-20-5", cap(PlannerConfig::elian(20, 5, 0.5, Degrees{a}, weight))});
    }
    return out;
}

std::vector<NamedConfig> parse_configs(const std::string& json_text)
{
    const json doc = json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("config file must hold a JSON array");
    std::vector<NamedConfig> out;
    for (const auto& item : doc) {
        NamedConfig nc;
        nc.config = config_from_json(item);
        nc.label = item.value("label", std::string());
        if (nc.label.empty()) throw std::invalid_argument("config entry without a label");
        out.push_back(std::move(nc));
    }
    return out;
}

void write_record_jsonl(std::ostream& out, const RunRecord& rec)
{
    json path = json::array();
    for (const Cell c : rec.path) path.push_back({c.col, c.row});
    json j{{"instance_id", rec.instance_id},
           {"label", rec.label},
           {"config", config_to_json(rec.config)},
           {"verdict", to_string(rec.verdict)},
           {"runtime_s", rec.runtime_s},
           {"path_length", rec.path_length ? json(*rec.path_length) : json(nullptr)},
           {"accumulated_angle", rec.accumulated_angle ? json(*rec.accumulated_angle) : json(nullptr)},
           {"expansions", rec.expansions},
           {"reinsertions", rec.reinsertions},
           {"path", std::move(path)}};
    out << j.dump() << '\n';
}

std::vector<RunRecord> read_records_jsonl(std::istream& in)
{
    std::vector<RunRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            RunRecord r;
            r.instance_id = j.at("instance_id").get<std::string>();
            r.label = j.at("label").get<std::string>();
            r.config = config_from_json(j.at("config"));
            const std::string v = j.at("verdict").get<std::string>();
            if (v == "found")
                r.verdict = Verdict::Found;
            else if (v == "not_found")
                r.verdict = Verdict::NotFound;
            else if (v == "timeout")
                r.verdict = Verdict::Timeout;
            else
                throw std::invalid_argument("unknown verdict '" + v + "'");
            r.runtime_s = j.at("runtime_s").get<double>();
            if (!j.at("path_length").is_null()) r.path_length = j["path_length"].get<double>();
            if (!j.at("accumulated_angle").is_null()) r.accumulated_angle = j["accumulated_angle"].get<double>();
            r.expansions = j.at("expansions").get<std::uint64_t>();
            r.reinsertions = j.at("reinsertions").get<std::uint64_t>();
            for (const auto& p : j.at("path")) r.path.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

}  // namespace elian
