// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "accomplice/claims.hpp"
#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/experiments.hpp"
#include "accomplice/manipulation.hpp"
#include "accomplice/stability.hpp"
#include "../support.hpp"

using namespace accomplice;
using accomplice::testing::list_of;
using accomplice::testing::load;
using accomplice::testing::matching_of;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr std::uint64_t kRetrySeed = 4242;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

ExperimentReport experiment(Experiment e, std::vector<int> ns, std::size_t trials, std::uint64_t seed,
                            std::vector<int> pools = {}) {
    ExperimentConfig config;
    config.experiment = e;
    config.n_values = std::move(ns);
    config.trials = trials;
    config.seed = seed;
    config.pool_sizes = std::move(pools);
    return run_experiment(config);
}

double metric(const ExperimentReport& report, int n, const std::string& name) {
    const auto v = find_metric(report, n, name);
    if (!v) throw std::runtime_error("missing metric " + name);
    return *v;
}

void worked_examples(Outcome& out) {
    const auto intro = load("intro.txt");
    out.require(run_da(intro).matching == matching_of({3, 1, 4, 2}), "intro DA matching");
    const auto intro_nr = optimal_accomplice_no_regret(intro, 0, 0);
    out.require(intro_nr.outcome.man_of(0) == 2, "intro no-regret gives w1 m3");
    out.require(intro_nr.outcome == matching_of({3, 4, 1, 2}), "intro manipulated matching");
    out.require(intro_nr.regret == 0, "intro accomplice keeps w3");

    const auto unstable = load("unstable_no_regret.txt");
    const auto star = da_with_misreport(unstable, 2, list_of({4, 3, 1, 2, 5})).matching;
    out.require(star == matching_of({2, 1, 3, 5, 4}), "starred matching");
    out.require(star.man_of(3) == 4, "w4 gets m5");
    out.require(blocking_pairs(star, unstable) == std::vector<BlockingPair>{{2, 0}}, "blocking pair (m3,w1)");
    const auto dagger = da_with_misreport(unstable, 2, list_of({4, 1, 3, 2, 5})).matching;
    out.require(dagger == matching_of({1, 2, 3, 5, 4}), "daggered matching");
    out.require(is_stable(dagger, unstable), "daggered matching stable for the truth");

    const auto regret = load("with_regret.txt");
    const auto nr = optimal_accomplice_no_regret(regret, 0, 0);
    out.require(nr.outcome.man_of(0) == 1, "no-regret gives w1 m2");
    out.require(da_with_misreport(regret, 0, list_of({2, 4, 1, 5, 3})).matching == matching_of({4, 1, 2, 5, 3}),
                "starred regret-example matching");
    const auto wr = optimal_accomplice_with_regret(regret, 0, 0);
    out.require(wr.outcome.man_of(0) == 0, "with-regret gives w1 m1");
    out.require(wr.outcome == matching_of({1, 5, 2, 3, 4}), "daggered regret-example matching");
    const auto pairs = blocking_pairs(wr.outcome, regret);
    out.require(std::find(pairs.begin(), pairs.end(), BlockingPair{0, 3}) != pairs.end(), "blocking pair (m1,w4)");

    const auto self_case = load("self_beats_accomplice.txt");
    const auto self = optimal_self(self_case, 0);
    out.require(self.outcome.man_of(0) == 0, "self manipulation gives w1 m1");
    out.require(self.outcome == matching_of({1, 2, 3, 4}), "self-manipulated matching");
    for (Agent m = 0; m < 4; ++m) {
        const auto r = optimal_accomplice_no_regret(self_case, m, 0);
        out.require(r.improvement == 0 && !r.promoted_agent, "accomplice optimum is truth-telling");
    }
}

void fraction_women(Outcome& out) {
    const auto report = experiment(Experiment::FractionWomen, {8}, 1000, kSeed);
    const double self = metric(report, 8, "self_fraction");
    const double acc = metric(report, 8, "accomplice_fraction");
    out.detail << " seed=" << kSeed << " self=" << self << " accomplice=" << acc;
    out.require(self >= 0.028 && self <= 0.057, "self fraction in [0.028, 0.057]");
    out.require(acc >= 0.085 && acc <= 0.115, "accomplice fraction in [0.085, 0.115]");
}

void dominance(Outcome& out) {
    const auto report = experiment(Experiment::FractionWomen, {8, 16, 24}, 1000, kSeed);
    out.detail << " seed=" << kSeed;
    for (int n : {8, 16, 24}) {
        const double self = metric(report, n, "self_fraction");
        const double acc = metric(report, n, "accomplice_fraction");
        out.detail << " n=" << n << ":" << acc << "/" << self;
        out.require(acc >= 1.8 * self, "accomplice >= 1.8 x self at n=" + std::to_string(n));
    }
}

void benefit_table(Outcome& out) {
    const auto report = experiment(Experiment::WomenBenefitTable, {20}, 1000, kSeed);
    const double one = metric(report, 20, "accomplice_bin_1");
    const double acc0 = metric(report, 20, "accomplice_bin_0") / 1000.0;
    const double self0 = metric(report, 20, "self_bin_0") / 1000.0;
    out.detail << " seed=" << kSeed << " accomplice_bin_1=" << one << " accomplice_bin_0=" << acc0
               << " self_bin_0=" << self0;
    out.require(one == 0, "no instance with exactly one accomplice winner");
    out.require(std::abs(acc0 - 0.307) <= 0.05, "accomplice zero bin near 0.307");
    out.require(std::abs(self0 - 0.411) <= 0.05, "self zero bin near 0.411");
}

void oracle_equivalence(Outcome& out) {
    using namespace accomplice::oracle;
    for (Claim claim : {Claim::NoRegretInconspicuous, Claim::WithRegretInconspicuous, Claim::BeneficialInconspicuous}) {
        for (int n : {3, 4, 5}) {
            VerifyOptions options;
            options.n_min = options.n_max = n;
            options.seed = 7;
            const auto report = verify_claim(claim, 200, options);
            if (report.failures) {
                out.detail << " " << claim_name(claim) << "@n=" << n << ": " << report.first_counterexample->details;
            }
            out.require(report.failures == 0 && report.trials == 200,
                        std::string(claim_name(claim)) + " at n=" + std::to_string(n));
        }
    }
}

void property_suites(Outcome& out) {
    using namespace accomplice::oracle;
    std::size_t checked = 0;
    for (Claim claim : all_claims()) {
        VerifyOptions options;
        options.n_min = 3;
        options.n_max = claim == Claim::MenStrategyproofness ? 4 : 7;
        options.seed = 7;
        const auto report = verify_claim(claim, 500, options);
        checked += report.trials - report.vacuous;
        if (report.failures) {
            out.detail << " " << claim_name(claim) << ": " << report.failures << " failures ("
                       << report.first_counterexample->details << ")";
        }
        out.require(report.failures == 0, std::string(claim_name(claim)));
    }
    out.detail << " claims=" << all_claims().size() << " non-vacuous trials=" << checked;
}

void regret_vs_improvement(Outcome& out) {
    const auto report = experiment(Experiment::RegretVsImprovement, {20}, 1000, kSeed);
    const double regret = metric(report, 20, "regret_mean");
    const double improvement = metric(report, 20, "improvement_mean");
    out.detail << " seed=" << kSeed << " mean regret=" << regret << " mean improvement=" << improvement;
    out.require(regret > improvement, "mean regret > mean improvement");
}

bool pool_holds(const ExperimentReport& report, std::ostringstream& detail) {
    bool ok = true;
    const double self = metric(report, 40, "self_mean_improvement");
    detail << " self=" << self;
    for (int p : {1, 4, 10, 40}) {
        const double nr = metric(report, 40, "no_regret_mean_improvement_p" + std::to_string(p));
        const double wr = metric(report, 40, "with_regret_mean_improvement_p" + std::to_string(p));
        detail << " p" << p << ":nr=" << nr << ",wr=" << wr;
        ok = ok && wr >= self && (p < 4 || nr >= self);
    }
    return ok;
}

void accomplice_pool(Outcome& out) {
    out.detail << " seed=" << kSeed;
    if (pool_holds(experiment(Experiment::AccomplicePool, {40}, 200, kSeed, {1, 4, 10, 40}), out.detail)) return;
    out.detail << " | retry seed=" << kRetrySeed;
    out.require(pool_holds(experiment(Experiment::AccomplicePool, {40}, 200, kRetrySeed, {1, 4, 10, 40}), out.detail),
                "pool ordering on both seeds");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double budget_seconds;
        std::function<void(Outcome&)> check;
    };
    const std::vector<Criterion> criteria{
        {1, "worked-example regressions", 1, worked_examples},
        {2, "fraction of women at n=8", 30, fraction_women},
        {3, "accomplice fraction at least 1.8x self at n=8,16,24", 300, dominance},
        {4, "benefit table at n=20", 180, benefit_table},
        {5, "solvers agree with exhaustive search at n=3,4,5", 120, oracle_equivalence},
        {6, "structural property suites", 300, property_suites},
        {7, "regret exceeds improvement at n=20", 120, regret_vs_improvement},
        {8, "accomplice pools at n=40", 600, accomplice_pool},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.check(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s", seconds);
        out.require(seconds < c.budget_seconds, "runtime budget");
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << timing
                  << ")" << out.detail.str() << std::endl;
        failures += !out.pass;
    }
    return failures == 0 ? 0 : 1;
}
