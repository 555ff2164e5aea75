#include <doctest.h>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/oracle.hpp"
#include "accomplice/random.hpp"
#include "accomplice/stability.hpp"
#include "support.hpp"

using namespace accomplice;
using accomplice::testing::load;
using accomplice::testing::matching_of;

TEST_CASE("blocking pairs of the worked examples") {
    SUBCASE("no-regret manipulation that leaves (m3, w1) blocking") {
        const auto p = load("unstable_no_regret.txt");
        const auto pairs = blocking_pairs(matching_of({2, 1, 3, 5, 4}), p);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0] == Proposal{2, 0});
        CHECK(is_m_stable(matching_of({2, 1, 3, 5, 4}), p, 2));
        CHECK(is_stable(matching_of({1, 2, 3, 5, 4}), p));
    }
    SUBCASE("with-regret outcome blocked by (m1, w4)") {
        const auto p = load("with_regret.txt");
        const auto mu = matching_of({1, 5, 2, 3, 4});
        const auto pairs = blocking_pairs(mu, p);
        REQUIRE_FALSE(pairs.empty());
        CHECK(pairs[0] == Proposal{0, 3});
        CHECK(is_m_stable(mu, p, 0));
        CHECK_FALSE(is_m_stable(mu, p, 1));
    }
    CHECK_THROWS_AS(blocking_pairs(matching_of({1, 2}), load("intro.txt")), Error);
}

TEST_CASE("stable set of the intro profile") {
    const auto p = load("intro.txt");
    const auto stable = enumerate_stable(p);
    REQUIRE(stable.size() == 2);
    CHECK(stable.contains(matching_of({3, 1, 4, 2})));
    CHECK(stable.contains(matching_of({3, 4, 1, 2})));
    CHECK(meet(stable.matchings()[0], stable.matchings()[1], p) == matching_of({3, 4, 1, 2}));
    CHECK(join(stable.matchings()[0], stable.matchings()[1], p) == matching_of({3, 1, 4, 2}));
}

TEST_CASE("enumeration agrees with brute force") {
    Random rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = random_profile(1 + static_cast<int>(rng.below(7)), rng);
        CHECK(enumerate_stable(p).matchings() == oracle::brute_force_stable_set(p).matchings());
    }
}

TEST_CASE("enumeration cap") {
    Random rng(1);
    CHECK_THROWS_AS(enumerate_stable(random_profile(10, rng)), Error);
    CHECK_NOTHROW(enumerate_stable(random_profile(10, rng), 10));
}

TEST_CASE("meet and join reject unstable input") {
    const auto p = load("unstable_no_regret.txt");
    const auto good = run_da(p).matching;
    CHECK_THROWS_AS(meet(good, matching_of({2, 1, 3, 5, 4}), p), Error);
}

TEST_CASE("lattice extremes on random profiles") {
    Random rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_profile(2 + static_cast<int>(rng.below(6)), rng);
        const auto stable = enumerate_stable(p);
        Matching top = *stable.begin(), bottom = *stable.begin();
        for (const auto& mu : stable) {
            top = join(top, mu, p);
            bottom = meet(bottom, mu, p);
        }
        CHECK(top == run_da(p).matching);
        CHECK(bottom == run_da_women_proposing(p));
    }
}

TEST_CASE("weak preference orders") {
    const auto p = load("intro.txt");
    const auto men_best = matching_of({3, 1, 4, 2});
    const auto women_best = matching_of({3, 4, 1, 2});
    CHECK(men_weakly_prefer(p, men_best, women_best));
    CHECK_FALSE(men_weakly_prefer(p, women_best, men_best));
    CHECK(women_weakly_prefer(p, women_best, men_best));
    CHECK(men_weakly_prefer(p, men_best, men_best));
}
