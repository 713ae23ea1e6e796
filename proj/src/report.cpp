#include "elian/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace elian {

using nlohmann::json;

namespace {

using GroupKey = std::pair<double, std::string>;  // (alpha, label)

struct Group {
    std::set<std::string> instances;
    std::set<std::string> solved;
    std::map<std::string, const RunRecord*> by_instance;
};

// Sorted summation so the result does not depend on record order.
std::optional<double> mean_of(std::vector<double> v)
{
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

const char* const kColumns[] = {"label",
                                "alpha",
                                "instances",
                                "solved",
                                "success_rate",
                                "success_delta",
                                "common_solved",
                                "median_runtime_s",
                                "mean_path_length",
                                "mean_accumulated_angle",
                                "normalized_accumulated_angle",
                                "only_solved_rate"};

std::string fmt_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v)
{
    return v ? fmt_real(*v) : std::string();
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line)
{
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cells.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.emplace_back();
        } else {
            cells.back() += ch;
        }
    }
    return cells;
}

double to_real(const std::string& s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

std::optional<double> to_opt(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    return to_real(s);
}

json opt_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::optional<double> json_opt(const json& j, const char* key)
{
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

}  // namespace

double median(std::vector<double> values)
{
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

AggregateReport aggregate(std::span<const RunRecord> records, const std::string& baseline)
{
    if (records.empty()) throw std::invalid_argument("no records to aggregate");

    std::map<GroupKey, Group> groups;
    for (const RunRecord& r : records) {
        Group& g = groups[{r.config.alpha_max.value, r.label}];
        if (!g.instances.insert(r.instance_id).second)
            throw std::invalid_argument("duplicate record for " + r.instance_id + " / " + r.label);
        g.by_instance[r.instance_id] = &r;
        if (r.verdict == Verdict::Found) g.solved.insert(r.instance_id);
    }

    const bool baseline_known = std::any_of(groups.begin(), groups.end(),
                                            [&](const auto& kv) { return kv.first.second == baseline; });
    if (!baseline_known) throw std::invalid_argument("unknown baseline label '" + baseline + "'");

    // Instances solved by every label at each angle.
    std::map<double, std::set<std::string>> common;
    for (const auto& [key, g] : groups) {
        auto it = common.find(key.first);
        if (it == common.end()) {
            common.emplace(key.first, g.solved);
            continue;
        }
        std::set<std::string> both;
        std::set_intersection(it->second.begin(), it->second.end(), g.solved.begin(), g.solved.end(),
                              std::inserter(both, both.end()));
        it->second = std::move(both);
    }

    AggregateReport report;
    report.baseline = baseline;
    for (const auto& [key, g] : groups) {
        const auto& [alpha, label] = key;
        ReportRow row;
        row.label = label;
        row.alpha = alpha;
        row.instances = g.instances.size();
        row.solved = g.solved.size();
        row.success_rate = 100.0 * static_cast<double>(row.solved) / static_cast<double>(row.instances);

        const auto& shared = common.at(alpha);
        row.common_solved = shared.size();
        std::vector<double> runtimes, lengths, angles;
        for (const auto& id : shared) {
            const RunRecord& r = *g.by_instance.at(id);
            runtimes.push_back(r.runtime_s);
            lengths.push_back(r.path_length.value_or(0.0));
            angles.push_back(r.accumulated_angle.value_or(0.0));
        }
        if (!runtimes.empty()) row.median_runtime_s = median(runtimes);
        row.mean_path_length = mean_of(lengths);
        row.mean_accumulated_angle = mean_of(angles);

        const auto base_it = groups.find({alpha, baseline});
        if (label != baseline && base_it != groups.end()) {
            const Group& base = base_it->second;
            row.success_delta =
                row.success_rate - 100.0 * static_cast<double>(base.solved.size()) / base.instances.size();
            std::size_t unsolved = 0, rescued = 0;
            for (const auto& id : base.instances) {
                if (base.solved.contains(id)) continue;
                ++unsolved;
                if (g.solved.contains(id)) ++rescued;
            }
            if (unsolved > 0) row.only_solved_rate = 100.0 * static_cast<double>(rescued) / unsolved;
        }
        report.rows.push_back(std::move(row));
    }

    // Normalize angles against the baseline at its smallest angle limit.
    const auto base_row = std::find_if(report.rows.begin(), report.rows.end(),
                                       [&](const ReportRow& r) { return r.label == baseline; });
    if (base_row != report.rows.end() && base_row->mean_accumulated_angle &&
        *base_row->mean_accumulated_angle > 0.0) {
        const double ref = *base_row->mean_accumulated_angle;
        for (ReportRow& r : report.rows)
            if (r.mean_accumulated_angle) r.normalized_accumulated_angle = *r.mean_accumulated_angle / ref;
    }
    return report;
}

std::string emit_report(const AggregateReport& report, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        json rows = json::array();
        for (const ReportRow& r : report.rows) {
            rows.push_back(json{{"label", r.label},
                                {"alpha", r.alpha},
                                {"instances", r.instances},
                                {"solved", r.solved},
                                {"success_rate", r.success_rate},
                                {"success_delta", opt_json(r.success_delta)},
                                {"common_solved", r.common_solved},
                                {"median_runtime_s", opt_json(r.median_runtime_s)},
                                {"mean_path_length", opt_json(r.mean_path_length)},
                                {"mean_accumulated_angle", opt_json(r.mean_accumulated_angle)},
                                {"normalized_accumulated_angle", opt_json(r.normalized_accumulated_angle)},
                                {"only_solved_rate", opt_json(r.only_solved_rate)}});
        }
        return json{{"baseline", report.baseline}, {"rows", std::move(rows)}}.dump(2) + "\n";
    }

    std::ostringstream out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? "," : "") << kColumns[i];
    out << '\n';
    for (const ReportRow& r : report.rows) {
        out << csv_quote(r.label) << ',' << fmt_real(r.alpha) << ',' << r.instances << ',' << r.solved << ','
            << fmt_real(r.success_rate) << ',' << fmt_opt(r.success_delta) << ',' << r.common_solved << ','
            << fmt_opt(r.median_runtime_s) << ',' << fmt_opt(r.mean_path_length) << ','
            << fmt_opt(r.mean_accumulated_angle) << ',' << fmt_opt(r.normalized_accumulated_angle) << ','
            << fmt_opt(r.only_solved_rate) << '\n';
    }
    return out.str();
}

AggregateReport read_report(std::string_view text, ReportFormat format)
{
    AggregateReport report;
    if (format == ReportFormat::Json) {
        const json doc = json::parse(text);
        report.baseline = doc.at("baseline").get<std::string>();
        for (const auto& j : doc.at("rows")) {
            ReportRow r;
            r.label = j.at("label").get<std::string>();
            r.alpha = j.at("alpha").get<double>();
            r.instances = j.at("instances").get<std::size_t>();
            r.solved = j.at("solved").get<std::size_t>();
            r.success_rate = j.at("success_rate").get<double>();
            r.success_delta = json_opt(j, "success_delta");
            r.common_solved = j.at("common_solved").get<std::size_t>();
            r.median_runtime_s = json_opt(j, "median_runtime_s");
            r.mean_path_length = json_opt(j, "mean_path_length");
            r.mean_accumulated_angle = json_opt(j, "mean_accumulated_angle");
            r.normalized_accumulated_angle = json_opt(j, "normalized_accumulated_angle");
            r.only_solved_rate = json_opt(j, "only_solved_rate");
            report.rows.push_back(std::move(r));
        }
        return report;
    }

    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV report");
    if (csv_split(line).size() != std::size(kColumns)) throw std::invalid_argument("unexpected CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = csv_split(line);
        if (c.size() != std::size(kColumns)) throw std::invalid_argument("bad CSV row: " + line);
        ReportRow r;
        r.label = c[0];
        r.alpha = to_real(c[1]);
        r.instances = static_cast<std::size_t>(to_real(c[2]));
        r.solved = static_cast<std::size_t>(to_real(c[3]));
        r.success_rate = to_real(c[4]);
        r.success_delta = to_opt(c[5]);
        r.common_solved = static_cast<std::size_t>(to_real(c[6]));
        r.median_runtime_s = to_opt(c[7]);
        r.mean_path_length = to_opt(c[8]);
        r.mean_accumulated_angle = to_opt(c[9]);
        r.normalized_accumulated_angle = to_opt(c[10]);
        r.only_solved_rate = to_opt(c[11]);
        report.rows.push_back(std::move(r));
    }
    return report;
}

}  // namespace elian
