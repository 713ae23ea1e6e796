#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "elian/grid.hpp"
#include "elian/planner.hpp"

namespace elian {

/// A planner configuration under a display label such as "eLIAN-20-5".
/// Records are grouped by (label, alpha_max), so the label should not encode the angle.
struct NamedConfig {
    std::string label;
    PlannerConfig config;
};

struct RunRecord {
    std::string instance_id;
    std::string label;
    PlannerConfig config;
    Verdict verdict = Verdict::NotFound;
    /// Wall-clock seconds spent inside the search call only.
    double runtime_s = 0.0;
    std::optional<double> path_length;        // present iff Found
    std::optional<double> accumulated_angle;  // degrees, present iff Found
    std::uint64_t expansions = 0;
    std::uint64_t reinsertions = 0;
    std::vector<Cell> path;
};

/// Runs one search. Throws std::invalid_argument for a blocked or
/// out-of-bounds start/goal.
RunRecord run_instance(const Grid& grid, const Instance& inst, const NamedConfig& cfg);

struct BatchError {
    std::string source;
    std::string message;
};

struct BatchResult {
    /// Ordered by (scenario set, instance, config) regardless of parallelism.
    std::vector<RunRecord> records;
    std::vector<BatchError> errors;
};

/// Resolves a scenario's map name to a grid; throws when it cannot.
using MapResolver = std::function<Grid(const std::string& map_id)>;

/// Looks for the map under `dir`, first by the full name then by its file name.
MapResolver directory_resolver(std::string dir);

/// Receives each record as soon as its search finishes (completion order).
using RecordSink = std::function<void(const RunRecord&)>;

/// Parallel batch over every (instance, config) pair using up to `jobs`
/// OpenMP threads. Maps are loaded up front; a map that fails to load turns
/// into one BatchError and the remaining sets still run. Instances with a
/// blocked start/goal are reported as errors and skipped.
BatchResult run_batch(std::span<const ScenarioSet> sets, const MapResolver& resolve,
                      std::span<const NamedConfig> configs, int jobs, const RecordSink& sink = {});

/// Single-threaded reference for run_batch; same record order.
BatchResult run_batch_serial(std::span<const ScenarioSet> sets, const MapResolver& resolve,
                             std::span<const NamedConfig> configs, const RecordSink& sink = {});

/// LIAN-20, eLIAN-20-10 and eLIAN-20-5 (k = 0.5) at each angle.
std::vector<NamedConfig> default_configs(std::span<const double> alphas, double weight,
                                         double time_cap_s);

/// Reads a JSON array of {"label", "alg", "delta_max", "delta_min", "k",
/// "angle", "hweight", "timeout", "streak"}; missing fields take defaults.
std::vector<NamedConfig> parse_configs(const std::string& json_text);

/// One JSON object per line.
void write_record_jsonl(std::ostream& out, const RunRecord& rec);
std::vector<RunRecord> read_records_jsonl(std::istream& in);

}  // namespace elian
