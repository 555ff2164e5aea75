#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "accomplice/profile.hpp"

// Seeded property checks of the structural results the solvers rely on. Each
// claim is evaluated on random instances; brute force supplies the reference
// side wherever a solver is being checked.
namespace accomplice::oracle {

enum class Claim {
    StableSetContainment,         // no-regret push up: S(≻') ⊆ S(≻)
    NoRegretMonotonicity,         // no-regret push up: μ' ≽_W μ, μ ≽_M μ'
    NoRegretInconspicuous,        // no-regret solver matches exhaustive search
    WithRegretInconspicuous,      // with-regret solver matches exhaustive search
    BeneficialInconspicuous,      // every beneficial partner reachable by one promotion
    StrictPushUp,                 // changed no-regret outcome: >=2 women up, >=2 men down
    WeakPushUp,                   // pushing up women who prefer their partner changes nothing
    RegretMatchInPushedSet,       // with regret, the accomplice's new partner was pushed up
    NoRegretProposalCover,        // P(≻^X) ⊆ ∪ P(≻^x), no regret
    WithRegretProposalCover,      // P(≻^X) ⊆ ∪ P(≻^x), with regret
    PushUpProposalSuperset,       // no-regret push up: P(≻) ⊆ P(≻')
    LatticeClosure,               // meet and join stay in S(≻)
    MenOptimality,                // DA is men-optimal and women-pessimal in S(≻)
    MStability,                   // S(≻') is m-stable w.r.t. ≻ for any misreport of m
    PermutationInvariance,        // permuting the parts around μ(m) keeps DA fixed
    PushDownMen,                  // push down: μ'(m) = μ(m), μ' ≽_M μ
    PushDownWomen,                // push down: μ ≽_W μ'
    CombiningPushUpPushDown,      // beneficial X↑Y↓ gives w the same partner as X↑
    NoRegretStability,            // single no-regret promotions are stable w.r.t. truth
    MenStrategyproofness,         // no man gains by any misreport
    SelfInconspicuous,            // self solver matches exhaustive search
};

// Every claim, in declaration order.
const std::vector<Claim>& all_claims();

// Canonical CLI name ("stable-set-containment", ...).
std::string_view claim_name(Claim claim);

// Accepts canonical names and the short aliases listed by claim_aliases().
// Throws UnknownClaim.
Claim parse_claim(std::string_view text);

// (alias, claim) pairs accepted by parse_claim besides canonical names.
const std::vector<std::pair<std::string_view, Claim>>& claim_aliases();

// Largest n the claim accepts (exhaustive misreport or stable-set enumeration).
int claim_max_n(Claim claim);

struct Counterexample {
    std::size_t trial = 0;
    std::uint64_t trial_seed = 0;
    PreferenceProfile profile;
    Side agent_side = Side::Men;
    std::optional<Agent> agent;  // manipulating man (or woman for self claims)
    PreferenceList misreport;
    std::string details;
    std::vector<std::pair<std::string, Matching>> matchings;
};

struct OracleReport {
    Claim claim = Claim::StableSetContainment;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t vacuous = 0;  // trials whose precondition did not hold
    std::optional<Counterexample> first_counterexample;
    std::string configuration;
};

struct VerifyOptions {
    int n_min = 3;
    int n_max = 6;
    std::uint64_t seed = 7;
    // Enumerate every profile for each n instead of sampling (n_max <= 3).
    bool exhaustive_profiles = false;
};

// Throws InstanceTooLarge when n_max exceeds claim_max_n, ConfigInvalid on a
// bad range.
OracleReport verify_claim(Claim claim, std::size_t trials, const VerifyOptions& options);

// Profile text for the counterexample plus a JSON sidecar with the claim,
// trial seed, misreport and matchings.
std::string counterexample_profile_text(const Counterexample& cx);
std::string counterexample_sidecar_json(const OracleReport& report);

}  // namespace accomplice::oracle
