#include <doctest.h>

#include <json.hpp>

#include "accomplice/claims.hpp"
#include "accomplice/error.hpp"

using namespace accomplice;
using namespace accomplice::oracle;

TEST_CASE("claim names and aliases") {
    CHECK(all_claims().size() == 21);
    for (Claim c : all_claims()) CHECK(parse_claim(claim_name(c)) == c);
    for (const auto& [alias, claim] : claim_aliases()) CHECK(parse_claim(alias) == claim);
    CHECK(parse_claim("thm-4-5") == Claim::NoRegretInconspicuous);
    CHECK(parse_claim("prop-c-1") == Claim::StrictPushUp);
    CHECK(parse_claim("thm-4-1") == Claim::StableSetContainment);
    try {
        parse_claim("thm-9-9");
        FAIL("unknown claim accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownClaim);
    }
}

TEST_CASE("every claim holds on a small sample") {
    for (Claim c : all_claims()) {
        CAPTURE(claim_name(c));
        VerifyOptions options;
        options.n_min = 2;
        options.n_max = 5;
        options.seed = 3;
        const auto report = verify_claim(c, 40, options);
        CHECK(report.trials == 40);
        CHECK(report.failures == 0);
        CHECK_FALSE(report.first_counterexample);
    }
}

TEST_CASE("every claim holds on every profile with n <= 2") {
    for (Claim c : all_claims()) {
        CAPTURE(claim_name(c));
        VerifyOptions options;
        options.n_min = 1;
        options.n_max = 2;
        options.exhaustive_profiles = true;
        const auto report = verify_claim(c, 0, options);
        CHECK(report.trials == 1 + 16);
        CHECK(report.failures == 0);
    }
}

TEST_CASE("verify is deterministic per seed") {
    VerifyOptions options;
    const auto a = verify_claim(Claim::StableSetContainment, 50, options);
    const auto b = verify_claim(Claim::StableSetContainment, 50, options);
    CHECK(a.vacuous == b.vacuous);
    CHECK(a.configuration == b.configuration);
}

TEST_CASE("size limits") {
    VerifyOptions options;
    options.n_max = 8;
    CHECK_THROWS_AS(verify_claim(Claim::NoRegretInconspicuous, 1, options), Error);
    options.n_max = 3;
    options.n_min = 4;
    CHECK_THROWS_AS(verify_claim(Claim::NoRegretMonotonicity, 1, options), Error);
    options.n_min = 2;
    options.n_max = 4;
    options.exhaustive_profiles = true;
    CHECK_THROWS_AS(verify_claim(Claim::NoRegretMonotonicity, 1, options), Error);
}

TEST_CASE("sidecar without a counterexample") {
    OracleReport report;
    report.claim = Claim::LatticeClosure;
    report.trials = 3;
    const auto doc = nlohmann::json::parse(counterexample_sidecar_json(report));
    CHECK(doc["claim"] == "lattice-closure");
    CHECK(doc["trials"] == 3);
    CHECK_FALSE(doc.contains("counterexample"));
}

TEST_CASE("sidecar with a counterexample") {
    OracleReport report;
    report.claim = Claim::MStability;
    report.failures = 1;
    Counterexample cx;
    cx.profile = PreferenceProfile::from_lists({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
    cx.agent = 1;
    cx.misreport = {1, 0};
    cx.details = "synthetic";
    cx.matchings.emplace_back("outcome", Matching({1, 0}));
    report.first_counterexample = cx;
    const auto doc = nlohmann::json::parse(counterexample_sidecar_json(report));
    CHECK(doc["counterexample"]["agent"] == "m2");
    CHECK(doc["counterexample"]["misreport"] == nlohmann::json::array({"w2", "w1"}));
    CHECK(doc["counterexample"]["matchings"]["outcome"] == nlohmann::json::array({"w2", "w1"}));
    CHECK(counterexample_profile_text(cx) == "n=2\nm1: w1 w2\nm2: w2 w1\nw1: m1 m2\nw2: m2 m1\n");
}
