#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace accomplice {

enum class Experiment {
    FreqVsTruth,
    HeadToHead,
    RankImprovement,
    FractionWomen,
    AccomplicePool,
    ManipulableInstances,
    RegretVsImprovement,
    WomenBenefitTable,
};

const std::vector<Experiment>& all_experiments();

// "FractionWomen", as written in report rows.
std::string_view to_string(Experiment experiment) noexcept;
// "fraction-women", as typed on the command line.
std::string_view cli_name(Experiment experiment) noexcept;
// Accepts either spelling. Throws Error(UnknownClaim) on anything else.
Experiment parse_experiment(std::string_view text);

struct ExperimentConfig {
    Experiment experiment = Experiment::FractionWomen;
    std::vector<int> n_values;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    std::vector<int> pool_sizes;  // AccomplicePool only; empty means 1..n
    unsigned jobs = 1;
};

// Paper-scale defaults: n = 3..40 for the sweeps, 40 for the pool experiment,
// 20 for the regret and table experiments.
ExperimentConfig default_config(Experiment experiment);

// Throws ConfigInvalid unless trials >= 1, n_values nonempty and all >= 2,
// jobs >= 1 and pool sizes within 1..n.
void validate(const ExperimentConfig& config);

using MetricValue = std::variant<std::int64_t, double>;

struct ReportRow {
    int n = 0;
    std::string metric;
    MetricValue value;
    bool operator==(const ReportRow&) const = default;
};

struct SampleRow {
    int n = 0;
    std::string kind;
    std::int64_t value = 0;
    bool operator==(const SampleRow&) const = default;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::vector<SampleRow> samples;
    std::string notes;
    double wall_seconds = 0.0;
};

// Each trial draws its profile from the stream mix_seed(seed, n, trial), so
// the report does not depend on jobs.
ExperimentReport run_experiment(const ExperimentConfig& config);

enum class ReportFormat { Csv, Json };

// Deterministic text; the wall time appears only with include_timing (JSON).
std::string emit_report(const ExperimentReport& report, ReportFormat format, bool include_timing = false);

// Reads back the JSON form of emit_report. Throws ConfigInvalid on bad input.
ExperimentReport parse_report_json(std::string_view text);

// Looks up a row; nullopt when absent. Integer values are returned as double.
std::optional<double> find_metric(const ExperimentReport& report, int n, std::string_view metric);

struct BoxStats {
    std::size_t count = 0;
    double mean = 0, q1 = 0, median = 0, q3 = 0;
    double whisker_low = 0, whisker_high = 0;  // extreme data within 1.5 IQR of the box
    std::size_t outliers = 0;
};

// Quartiles by linear interpolation between order statistics.
BoxStats box_stats(std::vector<std::int64_t> values);

}  // namespace accomplice
