#include <doctest.h>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/manipulation.hpp"
#include "accomplice/random.hpp"
#include "accomplice/stability.hpp"
#include "support.hpp"

using namespace accomplice;
using accomplice::testing::list_of;
using accomplice::testing::load;
using accomplice::testing::matching_of;

TEST_CASE("intro: m1 promotes w1") {
    const auto p = load("intro.txt");
    const auto r = optimal_accomplice_no_regret(p, 0, 0);
    CHECK(r.strategy == Strategy::AccompliceNoRegret);
    REQUIRE(r.promoted_agent);
    CHECK(*r.promoted_agent == 0);
    CHECK(*r.promoted_position == 0);
    CHECK(r.misreport == list_of({1, 3, 2, 4}));
    CHECK(r.outcome == matching_of({3, 4, 1, 2}));
    CHECK(r.improvement == 2);
    CHECK(r.regret == 0);
    CHECK(r.outcome_stable_wrt_truth);

    const auto wr = optimal_accomplice_with_regret(p, 0, 0);
    CHECK(wr.outcome.man_of(0) == 2);
    CHECK(wr.regret == 0);

    const auto self = optimal_self(p, 0);
    CHECK(self.improvement == 0);
    CHECK_FALSE(self.promoted_agent);
    CHECK(self.misreport == list_of({4, 3, 1, 2}));
}

TEST_CASE("stability example: (m3, w4)") {
    const auto p = load("unstable_no_regret.txt");
    const auto r = optimal_accomplice_no_regret(p, 2, 3);
    CHECK(r.outcome.man_of(3) == 4);
    CHECK(r.regret == 0);
    CHECK(r.outcome_stable_wrt_truth);

    const auto star = evaluate_misreport(p, Strategy::AccompliceNoRegret, 2, 3, list_of({4, 3, 1, 2, 5}));
    CHECK(star.outcome == matching_of({2, 1, 3, 5, 4}));
    CHECK(star.improvement == 4);
    CHECK_FALSE(star.outcome_stable_wrt_truth);
    CHECK(star.outcome_m_stable_wrt_truth);

    const auto dagger = evaluate_misreport(p, Strategy::AccompliceNoRegret, 2, 3, list_of({4, 1, 3, 2, 5}));
    CHECK(dagger.outcome_stable_wrt_truth);
    CHECK(dagger.outcome.man_of(3) == 4);
}

TEST_CASE("regret example: (m1, w1)") {
    const auto p = load("with_regret.txt");
    const auto nr = optimal_accomplice_no_regret(p, 0, 0);
    CHECK(nr.outcome.man_of(0) == 1);
    CHECK(nr.regret == 0);
    CHECK(nr.outcome_stable_wrt_truth);

    const auto wr = optimal_accomplice_with_regret(p, 0, 0);
    CHECK(wr.outcome.man_of(0) == 0);
    CHECK(wr.regret == 1);
    CHECK(wr.improvement == 2);
    CHECK_FALSE(wr.outcome_stable_wrt_truth);
    CHECK(wr.outcome_m_stable_wrt_truth);
    CHECK(blocking_pairs(wr.outcome, p).front() == Proposal{0, 3});
}

TEST_CASE("self beats every no-regret accomplice") {
    const auto p = load("self_beats_accomplice.txt");
    const auto self = optimal_self(p, 0);
    CHECK(self.outcome.man_of(0) == 0);
    CHECK(self.outcome == matching_of({1, 2, 3, 4}));
    for (Agent m = 0; m < 4; ++m) CHECK(optimal_accomplice_no_regret(p, m, 0).improvement == 0);
    const std::vector<Agent> everyone{0, 1, 2, 3};
    CHECK(best_accomplice(p, 0, everyone, AccompliceMode::NoRegret).improvement == 0);
}

TEST_CASE("candidate generation") {
    const auto p = load("intro.txt");
    const auto mu = run_da(p).matching;
    // m1 holds w3 at the top, so w2, w1, w4 are each moved directly above her.
    const auto acc = accomplice_candidates(p, 0, mu);
    REQUIRE(acc.size() == 3);
    CHECK(acc[0].list == list_of({2, 3, 1, 4}));
    CHECK(acc[1].list == list_of({1, 3, 2, 4}));
    CHECK(acc[2].list == list_of({4, 3, 2, 1}));
    // w1 holds her last choice m2: nobody is below him.
    CHECK(self_candidates(p, 0, mu).empty());
    // w4 holds m3 in third place: m4 can go to any of the three slots up to him.
    CHECK(self_candidates(p, 3, mu).size() == 3);
}

TEST_CASE("best accomplice tie-break prefers lower regret then lower index") {
    const auto p = load("intro.txt");
    const std::vector<Agent> pool{3, 2, 1, 0};
    const auto r = best_accomplice(p, 0, pool, AccompliceMode::NoRegret);
    CHECK(r.manipulator == 0);
    CHECK(r.improvement == 2);
    CHECK_THROWS_AS(best_accomplice(p, 0, std::vector<Agent>{}, AccompliceMode::NoRegret), Error);
}

TEST_CASE("classify_outcome recomputes fields") {
    const auto p = load("with_regret.txt");
    auto r = optimal_accomplice_with_regret(p, 0, 0);
    const auto original = r;
    r.improvement = -7;
    r.regret = 99;
    r.outcome_stable_wrt_truth = true;
    const auto fixed = classify_outcome(p, r);
    CHECK(fixed.improvement == original.improvement);
    CHECK(fixed.regret == original.regret);
    CHECK(fixed.outcome_stable_wrt_truth == original.outcome_stable_wrt_truth);
}

TEST_CASE("batch helpers agree with the per-pair solvers") {
    Random rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const auto p = random_profile(n, rng);
        const auto nr = accomplice_improvement_by_woman(p, AccompliceMode::NoRegret);
        const auto wr = accomplice_improvement_by_woman(p, AccompliceMode::WithRegret);
        const auto self = self_improvement_by_woman(p);
        std::vector<Agent> men(static_cast<std::size_t>(n));
        for (Agent m = 0; m < n; ++m) men[m] = m;
        for (Agent w = 0; w < n; ++w) {
            CHECK(nr[w] == best_accomplice(p, w, men, AccompliceMode::NoRegret).improvement);
            CHECK(wr[w] == best_accomplice(p, w, men, AccompliceMode::WithRegret).improvement);
            CHECK(self[w] == optimal_self(p, w).improvement);
        }
    }
}

TEST_CASE("solver results are internally consistent") {
    Random rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        const auto p = random_profile(n, rng);
        const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(n)));
        const Agent w = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(n)));
        for (auto mode : {AccompliceMode::NoRegret, AccompliceMode::WithRegret}) {
            const auto r = optimal_accomplice(p, m, w, mode);
            CHECK(r.improvement >= 0);
            CHECK(r.regret >= 0);
            CHECK(da_with_misreport(p, m, r.misreport).matching == r.outcome);
            CHECK(classify_outcome(p, r).improvement == r.improvement);
            if (mode == AccompliceMode::NoRegret) CHECK(r.regret == 0);
            CHECK(r.outcome_m_stable_wrt_truth);
        }
        const auto s = optimal_self(p, w);
        CHECK(s.improvement >= 0);
        CHECK(run_da(p.with_woman_list(w, s.misreport)).matching == s.outcome);
    }
}
