#pragma once

#include <span>

#include "accomplice/profile.hpp"

namespace accomplice {

struct DaResult {
    Matching matching;
    ProposalTrace trace;
};

// Men-proposing deferred acceptance. Runs in rounds: every unmatched man, in
// ascending index order, proposes to the best woman who has not rejected him;
// each woman then keeps her favourite proposer. The trace lists proposals in
// that order. The result is the men-optimal stable matching.
DaResult run_da(const PreferenceProfile& profile);

// Women-proposing variant; returns the women-optimal stable matching.
Matching run_da_women_proposing(const PreferenceProfile& profile);

// run_da on the profile with man m's list replaced by `list`. Throws
// InvalidMisreport when the list is not a permutation of the women.
DaResult da_with_misreport(const PreferenceProfile& profile, Agent m, std::span<const Agent> list);

// One agent's submitted list, substituted for the true one without copying
// the profile. The list must be a valid permutation (not re-checked).
struct ListOverride {
    Side side = Side::Men;
    Agent agent = 0;
    std::span<const Agent> list;
};

// Men-proposing DA outcome only, optionally with one substituted list. This
// is the hot path of the solvers and experiments.
Matching da_matching(const PreferenceProfile& profile, const ListOverride* override = nullptr);

// Same, also recording the proposal trace.
DaResult da_traced(const PreferenceProfile& profile, const ListOverride* override = nullptr);

}  // namespace accomplice
