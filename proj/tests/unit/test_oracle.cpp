#include <doctest.h>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/manipulation.hpp"
#include "accomplice/oracle.hpp"
#include "accomplice/random.hpp"
#include "support.hpp"

using namespace accomplice;
using accomplice::testing::list_of;
using accomplice::testing::load;

TEST_CASE("exhaustive search on the worked examples") {
    SUBCASE("intro, m1 for w1") {
        const auto p = load("intro.txt");
        const auto nr = oracle::exhaustive_best_manipulation(p, Side::Men, 0, 0, oracle::Mode::NoRegret);
        CHECK(nr.best_partner == 2);
        CHECK(nr.lists_tried == 24);
        CHECK(run_da(p.with_man_list(0, nr.witness)).matching.man_of(0) == 2);
        const auto self = oracle::exhaustive_best_manipulation(p, Side::Women, 0, 0, oracle::Mode::SelfManipulation);
        CHECK(self.best_partner == 1);
    }
    SUBCASE("regret example, m1 for w1") {
        const auto p = load("with_regret.txt");
        CHECK(oracle::exhaustive_best_manipulation(p, Side::Men, 0, 0, oracle::Mode::NoRegret).best_partner == 1);
        const auto wr = oracle::exhaustive_best_manipulation(p, Side::Men, 0, 0, oracle::Mode::WithRegret);
        CHECK(wr.best_partner == 0);
        CHECK(wr.regret == 1);
    }
    SUBCASE("self example") {
        const auto p = load("self_beats_accomplice.txt");
        CHECK(oracle::exhaustive_best_manipulation(p, Side::Women, 0, 0, oracle::Mode::SelfManipulation)
                  .best_partner == 0);
        for (Agent m = 0; m < 4; ++m) {
            CHECK(oracle::exhaustive_best_manipulation(p, Side::Men, m, 0, oracle::Mode::NoRegret).best_partner == 2);
        }
    }
}

TEST_CASE("exhaustive search argument checks") {
    const auto p = load("intro.txt");
    CHECK_THROWS_AS(oracle::exhaustive_best_manipulation(p, Side::Women, 1, 0, oracle::Mode::SelfManipulation), Error);
    CHECK_THROWS_AS(oracle::exhaustive_best_manipulation(p, Side::Women, 0, 0, oracle::Mode::NoRegret), Error);
    Random rng(2);
    try {
        oracle::exhaustive_best_manipulation(random_profile(8, rng), Side::Men, 0, 0, oracle::Mode::NoRegret);
        FAIL("n=8 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InstanceTooLarge);
    }
}

TEST_CASE("for_each_misreport visits every permutation in order") {
    const auto p = load("intro.txt");
    std::vector<PreferenceList> seen;
    oracle::for_each_misreport(p, Side::Men, 1, [&](std::span<const Agent> list, const Matching&) {
        seen.emplace_back(list.begin(), list.end());
    });
    REQUIRE(seen.size() == 24);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("solvers match exhaustive search on small random profiles") {
    Random rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const auto p = random_profile(n, rng);
        for (Agent w = 0; w < n; ++w) {
            CHECK(optimal_self(p, w).outcome.man_of(w) ==
                  oracle::exhaustive_best_manipulation(p, Side::Women, w, w, oracle::Mode::SelfManipulation)
                      .best_partner);
            for (Agent m = 0; m < n; ++m) {
                CHECK(optimal_accomplice_no_regret(p, m, w).outcome.man_of(w) ==
                      oracle::exhaustive_best_manipulation(p, Side::Men, m, w, oracle::Mode::NoRegret).best_partner);
                const auto wr = optimal_accomplice_with_regret(p, m, w);
                const auto brute = oracle::exhaustive_best_manipulation(p, Side::Men, m, w, oracle::Mode::WithRegret);
                CHECK(wr.outcome.man_of(w) == brute.best_partner);
                CHECK(wr.regret == brute.regret);
            }
        }
    }
}
