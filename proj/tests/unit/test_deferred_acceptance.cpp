#include <doctest.h>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/random.hpp"
#include "accomplice/stability.hpp"
#include "support.hpp"

using namespace accomplice;
using accomplice::testing::list_of;
using accomplice::testing::load;
using accomplice::testing::matching_of;

TEST_CASE("intro DA outcome and trace") {
    const auto p = load("intro.txt");
    const auto result = run_da(p);
    CHECK(result.matching == matching_of({3, 1, 4, 2}));
    const std::vector<Proposal> expected{{0, 2}, {1, 0}, {2, 1}, {3, 1}, {2, 3}};
    CHECK(result.trace.proposals == expected);
}

TEST_CASE("women-proposing DA on the intro profile") {
    CHECK(run_da_women_proposing(load("intro.txt")) == matching_of({3, 4, 1, 2}));
}

TEST_CASE("n=1") {
    const auto result = run_da(load("trivial.txt"));
    CHECK(result.matching == matching_of({1}));
    CHECK(result.trace.proposals.size() == 1);
}

TEST_CASE("worked example outcomes under misreports") {
    SUBCASE("stability example, both lists of m3") {
        const auto p = load("unstable_no_regret.txt");
        CHECK(run_da(p).matching == matching_of({1, 2, 3, 4, 5}));
        CHECK(da_with_misreport(p, 2, list_of({4, 3, 1, 2, 5})).matching == matching_of({2, 1, 3, 5, 4}));
        CHECK(da_with_misreport(p, 2, list_of({4, 1, 3, 2, 5})).matching == matching_of({1, 2, 3, 5, 4}));
    }
    SUBCASE("regret example, both lists of m1") {
        const auto p = load("with_regret.txt");
        CHECK(run_da(p).matching == matching_of({4, 2, 1, 5, 3}));
        CHECK(da_with_misreport(p, 0, list_of({2, 4, 1, 5, 3})).matching == matching_of({4, 1, 2, 5, 3}));
        CHECK(da_with_misreport(p, 0, list_of({1, 4, 2, 5, 3})).matching == matching_of({1, 5, 2, 3, 4}));
    }
    SUBCASE("intro accomplice list") {
        const auto p = load("intro.txt");
        CHECK(da_with_misreport(p, 0, list_of({1, 3, 2, 4})).matching == matching_of({3, 4, 1, 2}));
    }
}

TEST_CASE("misreport validation") {
    const auto p = load("intro.txt");
    CHECK_THROWS_AS(da_with_misreport(p, 0, list_of({1, 1, 2, 4})), Error);
    CHECK_THROWS_AS(da_with_misreport(p, 0, list_of({1, 2, 3})), Error);
}

TEST_CASE("override path agrees with a materialised profile") {
    Random rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(9));
        const auto p = random_profile(n, rng);
        const auto list = random_permutation(n, rng);
        const Agent agent = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(n)));
        const Side side = rng.coin() ? Side::Men : Side::Women;
        const ListOverride override{side, agent, list};
        const auto copy = side == Side::Men ? p.with_man_list(agent, list) : p.with_woman_list(agent, list);
        const auto direct = run_da(copy);
        const auto traced = da_traced(p, &override);
        CHECK(da_matching(p, &override) == direct.matching);
        CHECK(traced.matching == direct.matching);
        CHECK(traced.trace.proposals == direct.trace.proposals);
    }
}

TEST_CASE("DA outputs are stable on random profiles") {
    Random rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = random_profile(1 + static_cast<int>(rng.below(15)), rng);
        CHECK(is_stable(run_da(p).matching, p));
        CHECK(is_stable(run_da_women_proposing(p), p));
    }
}
