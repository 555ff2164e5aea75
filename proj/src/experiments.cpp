#include "accomplice/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "accomplice/error.hpp"
#include "accomplice/manipulation.hpp"
#include "accomplice/random.hpp"

namespace accomplice {

namespace {

struct ExperimentInfo {
    Experiment experiment;
    std::string_view name;
    std::string_view cli;
};

constexpr std::array<ExperimentInfo, 8> kExperiments{{
    {Experiment::FreqVsTruth, "FreqVsTruth", "freq-vs-truth"},
    {Experiment::HeadToHead, "HeadToHead", "head-to-head"},
    {Experiment::RankImprovement, "RankImprovement", "rank-improvement"},
    {Experiment::FractionWomen, "FractionWomen", "fraction-women"},
    {Experiment::AccomplicePool, "AccomplicePool", "accomplice-pool"},
    {Experiment::ManipulableInstances, "ManipulableInstances", "manipulable-instances"},
    {Experiment::RegretVsImprovement, "RegretVsImprovement", "regret-vs-improvement"},
    {Experiment::WomenBenefitTable, "WomenBenefitTable", "women-benefit-table"},
}};

constexpr std::string_view kFixedWoman = "w1";

// Runs fn(trial) for every trial on `jobs` threads; results land by index so
// aggregation order never depends on scheduling.
template <class Fn>
auto parallel_trials(std::size_t trials, unsigned jobs, Fn fn) {
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> results(trials);
    if (jobs <= 1 || trials <= 1) {
        for (std::size_t t = 0; t < trials; ++t) results[t] = fn(t);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            try {
                results[t] = fn(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(trials));
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

PreferenceProfile trial_profile(const ExperimentConfig& config, int n, std::size_t trial) {
    Random rng(mix_seed(config.seed, static_cast<std::uint64_t>(n), trial));
    return random_profile(n, rng);
}

double fraction(std::int64_t count, std::int64_t total) {
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
}

std::vector<Agent> all_men(int n) {
    std::vector<Agent> men(static_cast<std::size_t>(n));
    std::iota(men.begin(), men.end(), 0);
    return men;
}

void add(ExperimentReport& report, int n, std::string metric, MetricValue value) {
    report.rows.push_back({n, std::move(metric), value});
}

void add_box(ExperimentReport& report, int n, const std::string& prefix, const std::vector<std::int64_t>& values) {
    const BoxStats s = box_stats(values);
    add(report, n, prefix + "_count", static_cast<std::int64_t>(s.count));
    add(report, n, prefix + "_mean", s.mean);
    add(report, n, prefix + "_q1", s.q1);
    add(report, n, prefix + "_median", s.median);
    add(report, n, prefix + "_q3", s.q3);
    add(report, n, prefix + "_whisker_low", s.whisker_low);
    add(report, n, prefix + "_whisker_high", s.whisker_high);
    add(report, n, prefix + "_outliers", static_cast<std::int64_t>(s.outliers));
}

void add_samples(ExperimentReport& report, int n, const std::string& kind, const std::vector<std::int64_t>& values) {
    for (auto v : values) report.samples.push_back({n, kind, v});
}

// --- fixed woman, both strategies -------------------------------------------

struct FixedWomanTrial {
    int accomplice = 0;  // best no-regret improvement over all men
    int self = 0;
};

std::vector<FixedWomanTrial> fixed_woman_trials(const ExperimentConfig& config, int n) {
    return parallel_trials(config.trials, config.jobs, [&](std::size_t t) {
        const auto profile = trial_profile(config, n, t);
        const auto men = all_men(n);
        return FixedWomanTrial{best_accomplice(profile, 0, men, AccompliceMode::NoRegret).improvement,
                               optimal_self(profile, 0).improvement};
    });
}

void freq_vs_truth(ExperimentReport& report, int n) {
    std::int64_t acc = 0, self = 0;
    for (const auto& r : fixed_woman_trials(report.config, n)) {
        acc += r.accomplice > 0;
        self += r.self > 0;
    }
    const auto total = static_cast<std::int64_t>(report.config.trials);
    add(report, n, "accomplice_beats_truth", fraction(acc, total));
    add(report, n, "self_beats_truth", fraction(self, total));
}

void head_to_head(ExperimentReport& report, int n) {
    std::int64_t acc = 0, self = 0, tie = 0;
    for (const auto& r : fixed_woman_trials(report.config, n)) {
        if (r.accomplice > r.self) ++acc;
        else if (r.self > r.accomplice) ++self;
        else ++tie;
    }
    const auto total = static_cast<std::int64_t>(report.config.trials);
    add(report, n, "accomplice_beats_self", fraction(acc, total));
    add(report, n, "self_beats_accomplice", fraction(self, total));
    add(report, n, "tie", fraction(tie, total));
}

void rank_improvement(ExperimentReport& report, int n) {
    std::vector<std::int64_t> acc, self;
    for (const auto& r : fixed_woman_trials(report.config, n)) {
        if (r.accomplice > 0) acc.push_back(r.accomplice);
        if (r.self > 0) self.push_back(r.self);
    }
    add_box(report, n, "accomplice", acc);
    add_box(report, n, "self", self);
    add_samples(report, n, "accomplice_improvement", acc);
    add_samples(report, n, "self_improvement", self);
}

// --- every woman --------------------------------------------------------------

struct AllWomenTrial {
    int accomplice_winners = 0;
    int self_winners = 0;
};

std::vector<AllWomenTrial> all_women_trials(const ExperimentConfig& config, int n) {
    return parallel_trials(config.trials, config.jobs, [&](std::size_t t) {
        const auto profile = trial_profile(config, n, t);
        const auto acc = accomplice_improvement_by_woman(profile, AccompliceMode::NoRegret);
        const auto self = self_improvement_by_woman(profile);
        auto positive = [](const std::vector<int>& v) {
            return static_cast<int>(std::count_if(v.begin(), v.end(), [](int x) { return x > 0; }));
        };
        return AllWomenTrial{positive(acc), positive(self)};
    });
}

void fraction_women(ExperimentReport& report, int n) {
    std::int64_t acc = 0, self = 0;
    for (const auto& r : all_women_trials(report.config, n)) {
        acc += r.accomplice_winners;
        self += r.self_winners;
    }
    const auto total = static_cast<std::int64_t>(report.config.trials) * n;
    add(report, n, "self_fraction", fraction(self, total));
    add(report, n, "accomplice_fraction", fraction(acc, total));
}

void manipulable_instances(ExperimentReport& report, int n) {
    std::int64_t acc = 0, self = 0;
    for (const auto& r : all_women_trials(report.config, n)) {
        acc += r.accomplice_winners > 0;
        self += r.self_winners > 0;
    }
    const auto total = static_cast<std::int64_t>(report.config.trials);
    add(report, n, "accomplice_fraction", fraction(acc, total));
    add(report, n, "self_fraction", fraction(self, total));
}

void women_benefit_table(ExperimentReport& report, int n) {
    std::vector<std::int64_t> acc(static_cast<std::size_t>(n) + 1, 0), self(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& r : all_women_trials(report.config, n)) {
        ++acc[r.accomplice_winners];
        ++self[r.self_winners];
    }
    for (int k = 0; k <= n; ++k) add(report, n, "accomplice_bin_" + std::to_string(k), acc[k]);
    for (int k = 0; k <= n; ++k) add(report, n, "self_bin_" + std::to_string(k), self[k]);
}

// --- pools and regret -----------------------------------------------------------

void accomplice_pool(ExperimentReport& report, int n) {
    struct Trial {
        std::vector<int> no_regret;    // best improvement within the first p men, index p-1
        std::vector<int> with_regret;
        int self = 0;
    };
    const auto trials = parallel_trials(report.config.trials, report.config.jobs, [&](std::size_t t) {
        const auto profile = trial_profile(report.config, n, t);
        Trial r;
        int best_nr = 0, best_wr = 0;
        for (Agent m = 0; m < n; ++m) {
            best_nr = std::max(best_nr, optimal_accomplice_no_regret(profile, m, 0).improvement);
            best_wr = std::max(best_wr, optimal_accomplice_with_regret(profile, m, 0).improvement);
            r.no_regret.push_back(best_nr);
            r.with_regret.push_back(best_wr);
        }
        r.self = optimal_self(profile, 0).improvement;
        return r;
    });

    std::vector<int> pools = report.config.pool_sizes;
    if (pools.empty()) {
        pools.resize(static_cast<std::size_t>(n));
        std::iota(pools.begin(), pools.end(), 1);
    }
    const auto total = static_cast<double>(report.config.trials);
    std::int64_t self = 0;
    for (const auto& r : trials) self += r.self;
    add(report, n, "self_mean_improvement", static_cast<double>(self) / total);
    for (int p : pools) {
        std::int64_t nr = 0, wr = 0;
        for (const auto& r : trials) {
            nr += r.no_regret[p - 1];
            wr += r.with_regret[p - 1];
        }
        add(report, n, "no_regret_mean_improvement_p" + std::to_string(p), static_cast<double>(nr) / total);
        add(report, n, "with_regret_mean_improvement_p" + std::to_string(p), static_cast<double>(wr) / total);
    }
}

void regret_vs_improvement(ExperimentReport& report, int n) {
    struct Trial {
        std::vector<std::int64_t> improvement, regret;
    };
    const auto trials = parallel_trials(report.config.trials, report.config.jobs, [&](std::size_t t) {
        const auto profile = trial_profile(report.config, n, t);
        Trial r;
        for (Agent m = 0; m < n; ++m) {
            const auto result = optimal_accomplice_with_regret(profile, m, 0);
            r.improvement.push_back(result.improvement);
            r.regret.push_back(result.regret);
        }
        return r;
    });
    std::vector<std::int64_t> improvement, regret, success_improvement, success_regret;
    for (const auto& r : trials) {
        improvement.insert(improvement.end(), r.improvement.begin(), r.improvement.end());
        regret.insert(regret.end(), r.regret.begin(), r.regret.end());
        for (std::size_t i = 0; i < r.improvement.size(); ++i) {
            if (r.improvement[i] <= 0) continue;
            success_improvement.push_back(r.improvement[i]);
            success_regret.push_back(r.regret[i]);
        }
    }
    add(report, n, "success_fraction",
        fraction(static_cast<std::int64_t>(success_improvement.size()), static_cast<std::int64_t>(improvement.size())));
    add_box(report, n, "improvement", improvement);
    add_box(report, n, "regret", regret);
    add(report, n, "improvement_mean_given_success", box_stats(success_improvement).mean);
    add(report, n, "regret_mean_given_success", box_stats(success_regret).mean);
    add_samples(report, n, "improvement", improvement);
    add_samples(report, n, "regret", regret);
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

std::string format_value(const MetricValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    return format_double(std::get<double>(value));
}

nlohmann::json value_json(const MetricValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
    // Round through the CSV text so both formats carry the same number.
    return std::stod(format_double(std::get<double>(value)));
}

}  // namespace

const std::vector<Experiment>& all_experiments() {
    static const std::vector<Experiment> all = [] {
        std::vector<Experiment> out;
        for (const auto& e : kExperiments) out.push_back(e.experiment);
        return out;
    }();
    return all;
}

std::string_view to_string(Experiment experiment) noexcept {
    for (const auto& e : kExperiments) {
        if (e.experiment == experiment) return e.name;
    }
    return "?";
}

std::string_view cli_name(Experiment experiment) noexcept {
    for (const auto& e : kExperiments) {
        if (e.experiment == experiment) return e.cli;
    }
    return "?";
}

Experiment parse_experiment(std::string_view text) {
    for (const auto& e : kExperiments) {
        if (text == e.name || text == e.cli) return e.experiment;
    }
    throw Error(ErrorCode::UnknownClaim, "unknown experiment '" + std::string(text) + "'");
}

ExperimentConfig default_config(Experiment experiment) {
    ExperimentConfig config;
    config.experiment = experiment;
    switch (experiment) {
        case Experiment::AccomplicePool:
            config.n_values = {40};
            break;
        case Experiment::RegretVsImprovement:
        case Experiment::WomenBenefitTable:
            config.n_values = {20};
            break;
        default:
            for (int n = 3; n <= 40; ++n) config.n_values.push_back(n);
    }
    return config;
}

void validate(const ExperimentConfig& config) {
    if (config.trials < 1) throw Error(ErrorCode::ConfigInvalid, "trials must be at least 1");
    if (config.jobs < 1) throw Error(ErrorCode::ConfigInvalid, "jobs must be at least 1");
    if (config.n_values.empty()) throw Error(ErrorCode::ConfigInvalid, "no values of n given");
    for (int n : config.n_values) {
        if (n < 2) throw Error(ErrorCode::ConfigInvalid, "every n must be at least 2");
        for (int p : config.pool_sizes) {
            if (p < 1 || p > n) {
                throw Error(ErrorCode::ConfigInvalid,
                            "pool size " + std::to_string(p) + " outside 1.." + std::to_string(n));
            }
        }
    }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = config;
    report.notes = "improvement = rank of old partner minus rank of new partner in the woman's true list; "
                   "regret = rank of new partner minus rank of old partner in the accomplice's true list; "
                   "fixed woman = " + std::string(kFixedWoman) + "; pool of size p = m1..mp; rng = " +
                   std::string(kRngAlgorithm);
    for (int n : config.n_values) {
        switch (config.experiment) {
            case Experiment::FreqVsTruth: freq_vs_truth(report, n); break;
            case Experiment::HeadToHead: head_to_head(report, n); break;
            case Experiment::RankImprovement: rank_improvement(report, n); break;
            case Experiment::FractionWomen: fraction_women(report, n); break;
            case Experiment::AccomplicePool: accomplice_pool(report, n); break;
            case Experiment::ManipulableInstances: manipulable_instances(report, n); break;
            case Experiment::RegretVsImprovement: regret_vs_improvement(report, n); break;
            case Experiment::WomenBenefitTable: women_benefit_table(report, n); break;
        }
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format, bool include_timing) {
    const std::string name(to_string(report.config.experiment));
    if (format == ReportFormat::Csv) {
        std::string out = "experiment,n,metric,value\n";
        for (const auto& row : report.rows) {
            out += name + "," + std::to_string(row.n) + "," + row.metric + "," + format_value(row.value) + "\n";
        }
        if (!report.samples.empty()) {
            out += "\nexperiment,n,sample_kind,value\n";
            for (const auto& s : report.samples) {
                out += name + "," + std::to_string(s.n) + "," + s.kind + "," + std::to_string(s.value) + "\n";
            }
        }
        return out;
    }

    nlohmann::ordered_json doc;
    doc["experiment"] = name;
    doc["config"] = {{"n_values", report.config.n_values},
                     {"trials", report.config.trials},
                     {"seed", report.config.seed},
                     {"pool_sizes", report.config.pool_sizes}};
    doc["rng"] = std::string(kRngAlgorithm);
    doc["notes"] = report.notes;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        doc["rows"].push_back({{"experiment", name}, {"n", row.n}, {"metric", row.metric}, {"value", value_json(row.value)}});
    }
    doc["samples"] = nlohmann::ordered_json::array();
    for (const auto& s : report.samples) {
        doc["samples"].push_back({{"experiment", name}, {"n", s.n}, {"sample_kind", s.kind}, {"value", s.value}});
    }
    if (include_timing) doc["wall_seconds"] = report.wall_seconds;
    return doc.dump(2) + "\n";
}

ExperimentReport parse_report_json(std::string_view text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        ExperimentReport report;
        report.config.experiment = parse_experiment(doc.at("experiment").get<std::string>());
        const auto& config = doc.at("config");
        report.config.n_values = config.at("n_values").get<std::vector<int>>();
        report.config.trials = config.at("trials").get<std::size_t>();
        report.config.seed = config.at("seed").get<std::uint64_t>();
        report.config.pool_sizes = config.at("pool_sizes").get<std::vector<int>>();
        report.notes = doc.value("notes", "");
        for (const auto& row : doc.at("rows")) {
            const auto& v = row.at("value");
            MetricValue value = v.is_number_integer() ? MetricValue(v.get<std::int64_t>()) : MetricValue(v.get<double>());
            report.rows.push_back({row.at("n").get<int>(), row.at("metric").get<std::string>(), value});
        }
        for (const auto& s : doc.at("samples")) {
            report.samples.push_back(
                {s.at("n").get<int>(), s.at("sample_kind").get<std::string>(), s.at("value").get<std::int64_t>()});
        }
        report.wall_seconds = doc.value("wall_seconds", 0.0);
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigInvalid, std::string("bad report JSON: ") + e.what());
    }
}

std::optional<double> find_metric(const ExperimentReport& report, int n, std::string_view metric) {
    for (const auto& row : report.rows) {
        if (row.n != n || row.metric != metric) continue;
        if (const auto* i = std::get_if<std::int64_t>(&row.value)) return static_cast<double>(*i);
        return std::get<double>(row.value);
    }
    return std::nullopt;
}

BoxStats box_stats(std::vector<std::int64_t> values) {
    BoxStats s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        return static_cast<double>(values[lo]) + (pos - static_cast<double>(lo)) * static_cast<double>(values[hi] - values[lo]);
    };
    s.mean = static_cast<double>(std::accumulate(values.begin(), values.end(), std::int64_t{0})) /
             static_cast<double>(values.size());
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    const double iqr = s.q3 - s.q1;
    const double low_fence = s.q1 - 1.5 * iqr, high_fence = s.q3 + 1.5 * iqr;
    s.whisker_low = s.q1;
    s.whisker_high = s.q3;
    bool low_set = false;
    for (auto v : values) {
        const auto x = static_cast<double>(v);
        if (x < low_fence || x > high_fence) {
            ++s.outliers;
            continue;
        }
        if (!low_set) {
            s.whisker_low = x;
            low_set = true;
        }
        s.whisker_high = x;
    }
    return s;
}

}  // namespace accomplice
