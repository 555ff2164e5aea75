#include <doctest.h>

#include <map>

#include "accomplice/error.hpp"
#include "accomplice/random.hpp"

using namespace accomplice;

TEST_CASE("same seed, same profile") {
    Random a(99), b(99);
    CHECK(random_profile(6, a) == random_profile(6, b));
    Random c(100);
    Random d(99);
    CHECK_FALSE(random_profile(6, c) == random_profile(6, d));
}

TEST_CASE("n=1 and invalid n") {
    Random rng(1);
    CHECK(random_profile(1, rng).size() == 1);
    CHECK_THROWS_AS(random_profile(0, rng), Error);
}

TEST_CASE("permutations of three are uniform") {
    Random rng(2024);
    std::map<PreferenceList, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++counts[random_profile(3, rng).men_lists()[0]];
    REQUIRE(counts.size() == 6);
    for (const auto& [list, count] : counts) {
        CHECK(std::abs(static_cast<double>(count) / draws - 1.0 / 6) <= 0.01);
    }
}

TEST_CASE("bounded draws stay in range and hit every value") {
    Random rng(8);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        ++hits[v];
    }
    for (int h : hits) CHECK(h > 800);
    for (int i = 0; i < 100; ++i) {
        const auto v = rng.between(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
}

TEST_CASE("seed mixing separates streams") {
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    CHECK(mix_seed(1, 2, 3) == mix_seed(mix_seed(1, 2), 3));
    CHECK(mix_seed(7, 0) != mix_seed(7, 1));
}
