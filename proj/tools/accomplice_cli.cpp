#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "accomplice/claims.hpp"
#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/experiments.hpp"
#include "accomplice/manipulation.hpp"
#include "accomplice/random.hpp"
#include "accomplice/stability.hpp"

using namespace accomplice;

namespace {

enum Exit : int { Ok = 0, VerifyFailed = 1, BadInput = 2, UnknownAgent = 3, UnknownName = 4 };

struct ExitError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ExitError{BadInput, "cannot read " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ExitError{BadInput, "cannot write " + path};
    out << text;
}

PreferenceProfile load_profile(const std::string& path) {
    try {
        return parse_profile(read_file(path));
    } catch (const Error& e) {
        throw ExitError{BadInput, path + ": " + e.what()};
    }
}

Agent agent_arg(Side side, const std::string& name, const PreferenceProfile& profile) {
    const auto agent = parse_agent_name(side, name);
    if (!agent || *agent >= profile.size()) throw ExitError{UnknownAgent, "unknown agent '" + name + "'"};
    return *agent;
}

int parse_int(const std::string& text, const std::string& what) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ExitError{BadInput, "bad " + what + " '" + text + "'"};
    return value;
}

// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = parse_int(text, "range");
        return {v, v};
    }
    const int lo = parse_int(text.substr(0, dots), "range");
    const int hi = parse_int(text.substr(dots + 2), "range");
    if (hi < lo) throw ExitError{BadInput, "empty range '" + text + "'"};
    return {lo, hi};
}

std::string list_text(Side listed, std::span<const Agent> list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ' ';
        out += agent_name(listed, list[i]);
    }
    return out;
}

nlohmann::ordered_json matching_json(const Matching& mu) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (Agent m = 0; m < mu.size(); ++m) out[agent_name(Side::Men, m)] = agent_name(Side::Women, mu.woman_of(m));
    return out;
}

// --- solve ---------------------------------------------------------------------

struct SolveArgs {
    std::string path;
    bool trace = false;
    bool women_proposing = false;
};

int cmd_solve(const SolveArgs& args) {
    const auto profile = load_profile(args.path);
    if (args.women_proposing) {
        std::cout << format_matching(run_da_women_proposing(profile));
        return Ok;
    }
    const auto result = run_da(profile);
    std::cout << format_matching(result.matching);
    if (args.trace) {
        std::cout << "proposals:\n";
        for (const auto& p : result.trace.proposals) {
            std::cout << agent_name(Side::Men, p.man) << " -> " << agent_name(Side::Women, p.woman) << "\n";
        }
    }
    return Ok;
}

// --- audit ---------------------------------------------------------------------

struct AuditArgs {
    std::string path;
    std::string woman;
    std::string strategy;
    std::string accomplice;
    std::vector<std::string> pool;
    std::string format = "text";
};

int cmd_audit(const AuditArgs& args) {
    const auto profile = load_profile(args.path);
    const Agent w = agent_arg(Side::Women, args.woman, profile);
    const Matching truthful = run_da(profile).matching;

    ManipulationResult result;
    if (args.strategy == "self") {
        if (!args.accomplice.empty() || !args.pool.empty()) {
            throw ExitError{BadInput, "--accomplice and --pool do not apply to self manipulation"};
        }
        result = optimal_self(profile, w);
    } else {
        const AccompliceMode mode =
            args.strategy == "accomplice-nr" ? AccompliceMode::NoRegret : AccompliceMode::WithRegret;
        if (!args.accomplice.empty()) {
            result = optimal_accomplice(profile, agent_arg(Side::Men, args.accomplice, profile), w, mode);
        } else {
            std::vector<Agent> pool;
            for (const auto& name : args.pool) pool.push_back(agent_arg(Side::Men, name, profile));
            if (pool.empty()) {
                for (Agent m = 0; m < profile.size(); ++m) pool.push_back(m);
            }
            result = best_accomplice(profile, w, pool, mode);
        }
    }

    const Side manipulator_side = result.strategy == Strategy::SelfManipulation ? Side::Women : Side::Men;
    const Side listed = manipulator_side == Side::Men ? Side::Women : Side::Men;
    const std::string manipulator = agent_name(manipulator_side, result.manipulator);

    if (args.format == "json") {
        nlohmann::ordered_json doc;
        doc["strategy"] = std::string(to_string(result.strategy));
        doc["woman"] = agent_name(Side::Women, w);
        doc["manipulator"] = manipulator;
        if (result.promoted_agent) {
            doc["promoted"] = agent_name(listed, *result.promoted_agent);
            doc["promoted_position"] = *result.promoted_position + 1;
        } else {
            doc["promoted"] = nullptr;
            doc["promoted_position"] = nullptr;
        }
        nlohmann::ordered_json misreport = nlohmann::ordered_json::array();
        for (Agent a : result.misreport) misreport.push_back(agent_name(listed, a));
        doc["misreport"] = misreport;
        doc["truthful"] = matching_json(truthful);
        doc["outcome"] = matching_json(result.outcome);
        doc["partner_before"] = agent_name(Side::Men, truthful.man_of(w));
        doc["partner_after"] = agent_name(Side::Men, result.outcome.man_of(w));
        doc["improvement"] = result.improvement;
        doc["regret"] = result.regret;
        doc["stable_wrt_truth"] = result.outcome_stable_wrt_truth;
        doc["m_stable_wrt_truth"] = result.outcome_m_stable_wrt_truth;
        std::cout << doc.dump(2) << "\n";
        return Ok;
    }

    std::cout << "strategy: " << to_string(result.strategy) << "\n"
              << "woman: " << agent_name(Side::Women, w) << "\n"
              << "manipulator: " << manipulator << "\n";
    if (result.promoted_agent) {
        std::cout << "promoted: " << agent_name(listed, *result.promoted_agent) << " to position "
                  << *result.promoted_position + 1 << "\n";
    } else {
        std::cout << "promoted: none (truth-telling)\n";
    }
    std::cout << "misreport: " << manipulator << ": " << list_text(listed, result.misreport) << "\n"
              << "outcome:\n"
              << format_matching(result.outcome) << "partner: " << agent_name(Side::Men, truthful.man_of(w))
              << " -> " << agent_name(Side::Men, result.outcome.man_of(w)) << "\n"
              << "improvement: " << result.improvement << "\n"
              << "regret: " << result.regret << "\n"
              << "stable: " << (result.outcome_stable_wrt_truth ? "yes" : "no") << "\n"
              << "m-stable: " << (result.outcome_m_stable_wrt_truth ? "yes" : "no") << "\n";
    return Ok;
}

// --- gen -------------------------------------------------------------------------

struct GenArgs {
    int n = 4;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "text";
};

int cmd_gen(const GenArgs& args) {
    if (args.n < 1) throw ExitError{BadInput, "--n must be at least 1"};
    Random rng(args.seed);
    const auto profile = random_profile(args.n, rng);
    write_output(args.out, args.format == "json" ? to_json(profile) : to_text(profile));
    return Ok;
}

// --- experiment ----------------------------------------------------------------

struct ExperimentArgs {
    std::string name;
    std::string n_range;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    std::vector<int> pool_sizes;
    std::string out;
    std::string format = "csv";
    unsigned jobs = 1;
    bool verbose = false;
};

int cmd_experiment(const ExperimentArgs& args) {
    Experiment experiment;
    try {
        experiment = parse_experiment(args.name);
    } catch (const Error& e) {
        throw ExitError{UnknownName, e.what()};
    }
    ExperimentConfig config = default_config(experiment);
    if (!args.n_range.empty()) {
        const auto [lo, hi] = parse_range(args.n_range);
        config.n_values.clear();
        for (int n = lo; n <= hi; ++n) config.n_values.push_back(n);
    }
    config.trials = args.trials;
    config.seed = args.seed;
    config.pool_sizes = args.pool_sizes;
    config.jobs = args.jobs;

    const auto report = run_experiment(config);
    const auto format = args.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
    write_output(args.out, emit_report(report, format, args.verbose));

    // Summaries go to stderr when the report itself is on stdout.
    std::ostream& summary = args.out.empty() ? std::cerr : std::cout;
    for (int n : config.n_values) {
        summary << to_string(experiment) << " n=" << n;
        int shown = 0;
        for (const auto& row : report.rows) {
            if (row.n != n || shown == 6) continue;
            summary << " " << row.metric << "=";
            std::visit([&](auto v) { summary << v; }, row.value);
            ++shown;
        }
        summary << "\n";
    }
    if (args.verbose) summary << "wall time: " << report.wall_seconds << " s\n";
    return Ok;
}

// --- verify ----------------------------------------------------------------------

struct VerifyArgs {
    std::string claim;
    std::size_t trials = 500;
    std::string n_range = "3..6";
    std::uint64_t seed = 7;
    std::string out_dir = "counterexamples";
    bool exhaustive = false;
};

int cmd_verify(const VerifyArgs& args) {
    oracle::Claim claim;
    try {
        claim = oracle::parse_claim(args.claim);
    } catch (const Error& e) {
        throw ExitError{UnknownName, e.what()};
    }
    oracle::VerifyOptions options;
    std::tie(options.n_min, options.n_max) = parse_range(args.n_range);
    options.seed = args.seed;
    options.exhaustive_profiles = args.exhaustive;

    const auto report = oracle::verify_claim(claim, args.trials, options);
    std::cout << "claim: " << oracle::claim_name(claim) << "\n"
              << "trials: " << report.trials << "\n"
              << "failures: " << report.failures << "\n"
              << "vacuous: " << report.vacuous << "\n"
              << "configuration: " << report.configuration << "\n";
    if (report.failures == 0) return Ok;

    const auto& cx = *report.first_counterexample;
    std::filesystem::create_directories(args.out_dir);
    const std::string stem = (std::filesystem::path(args.out_dir) /
                              (std::string(oracle::claim_name(claim)) + "-trial" + std::to_string(cx.trial)))
                                 .string();
    write_output(stem + ".txt", oracle::counterexample_profile_text(cx));
    write_output(stem + ".json", oracle::counterexample_sidecar_json(report));
    std::cout << "first failure: " << cx.details << "\n"
              << "counterexample: " << stem << ".txt (" << stem << ".json)\n";
    return VerifyFailed;
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::UnknownClaim ? UnknownName : BadInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deferred acceptance with accomplice and self manipulation"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run deferred acceptance on a profile file");
    solve_cmd->add_option("profile", solve.path, "Profile file (text or JSON)")->required();
    solve_cmd->add_flag("--trace", solve.trace, "Append the proposal sequence");
    solve_cmd->add_flag("--women-proposing", solve.women_proposing, "Let the women propose");

    AuditArgs audit;
    auto* audit_cmd = app.add_subcommand("audit", "Optimal inconspicuous manipulation for one woman");
    audit_cmd->add_option("profile", audit.path, "Profile file")->required();
    audit_cmd->add_option("--woman", audit.woman, "Strategic woman, e.g. w1")->required();
    audit_cmd->add_option("--strategy", audit.strategy, "self | accomplice-nr | accomplice-wr")
        ->required()
        ->check(CLI::IsMember({"self", "accomplice-nr", "accomplice-wr"}));
    auto* accomplice_opt = audit_cmd->add_option("--accomplice", audit.accomplice, "A single accomplice, e.g. m1");
    audit_cmd->add_option("--pool", audit.pool, "Candidate accomplices (default: every man)")
        ->delimiter(',')
        ->excludes(accomplice_opt);
    audit_cmd->add_option("--format", audit.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a uniformly random profile");
    gen_cmd->add_option("--n", gen.n, "Number of men (and women)")->required();
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");
    gen_cmd->add_option("--format", gen.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    ExperimentArgs experiment;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
    exp_cmd->add_option("name", experiment.name, "Experiment, e.g. fraction-women")->required();
    exp_cmd->add_option("--n-range", experiment.n_range, "a..b or a single n");
    exp_cmd->add_option("--trials", experiment.trials, "Profiles per n")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--seed", experiment.seed, "Seed");
    exp_cmd->add_option("--pool-sizes", experiment.pool_sizes, "Pool sizes for accomplice-pool")->delimiter(',');
    exp_cmd->add_option("--out", experiment.out, "Report path (default stdout)");
    exp_cmd->add_option("--format", experiment.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    exp_cmd->add_option("--jobs", experiment.jobs, "Worker threads")->check(CLI::PositiveNumber);
    exp_cmd->add_flag("--verbose", experiment.verbose, "Report wall time");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check a structural claim on random profiles");
    verify_cmd->add_option("--claim", verify.claim, "Claim name or alias")->required();
    verify_cmd->add_option("--trials", verify.trials, "Number of random profiles");
    verify_cmd->add_option("--n-range", verify.n_range, "a..b");
    verify_cmd->add_option("--seed", verify.seed, "Seed");
    verify_cmd->add_option("--out-dir", verify.out_dir, "Where counterexample bundles go");
    verify_cmd->add_flag("--exhaustive-profiles", verify.exhaustive, "Enumerate every profile (n <= 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve);
        if (*audit_cmd) return cmd_audit(audit);
        if (*gen_cmd) return cmd_gen(gen);
        if (*exp_cmd) return cmd_experiment(experiment);
        if (*verify_cmd) return cmd_verify(verify);
    } catch (const ExitError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return BadInput;
}
