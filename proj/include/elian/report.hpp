#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elian/harness.hpp"

namespace elian {

/// One (algorithm label, angle limit) line of an aggregate report.
///
/// Quality and runtime columns are computed over the commonly-solved set: the
/// instances solved by every label at the same angle limit.
struct ReportRow {
    std::string label;
    double alpha = 0.0;
    std::size_t instances = 0;
    std::size_t solved = 0;
    double success_rate = 0.0;  // percent
    /// Percentage points over the baseline at the same angle; empty for the baseline.
    std::optional<double> success_delta;
    std::size_t common_solved = 0;
    std::optional<double> median_runtime_s;
    std::optional<double> mean_path_length;
    std::optional<double> mean_accumulated_angle;
    /// mean_accumulated_angle divided by the baseline's value at its smallest angle.
    std::optional<double> normalized_accumulated_angle;
    /// Percent of baseline failures this label solves; empty for the baseline or
    /// when the baseline failed nothing.
    std::optional<double> only_solved_rate;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct AggregateReport {
    std::string baseline;
    std::vector<ReportRow> rows;  // sorted by (alpha, label)

    friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

/// Throws std::invalid_argument for empty input, an unknown baseline label, or
/// duplicate (instance, label, alpha) records.
AggregateReport aggregate(std::span<const RunRecord> records, const std::string& baseline);

/// Median of the values; average of the two middle ones for even counts.
double median(std::vector<double> values);

enum class ReportFormat { Csv, Json };

/// CSV header, in order:
/// label,alpha,instances,solved,success_rate,success_delta,common_solved,
/// median_runtime_s,mean_path_length,mean_accumulated_angle,
/// normalized_accumulated_angle,only_solved_rate
/// Empty optionals are empty CSV cells / JSON nulls. JSON is
/// {"baseline": "...", "rows": [{<same keys>}]}.
std::string emit_report(const AggregateReport& report, ReportFormat format);

/// Inverse of emit_report. CSV carries no baseline name, so it comes back empty.
AggregateReport read_report(std::string_view text, ReportFormat format);

}  // namespace elian
