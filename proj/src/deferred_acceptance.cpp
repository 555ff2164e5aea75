#include "accomplice/deferred_acceptance.hpp"

#include <algorithm>
#include <vector>

#include "accomplice/error.hpp"

namespace accomplice {

namespace {

// Generic round-based deferred acceptance. `proposer_list(p)` yields p's
// submitted list, `prefers(r, a, b)` says whether receiver r ranks proposer a
// above proposer b. Returns the receiver assigned to each proposer.
template <class ListOf, class Prefers>
std::vector<Agent> deferred_acceptance(int n, ListOf proposer_list, Prefers prefers, ProposalTrace* trace,
                                       bool proposers_are_men) {
    std::vector<int> next(static_cast<std::size_t>(n), 0);
    std::vector<Agent> holder(static_cast<std::size_t>(n), -1);
    std::vector<Agent> free_now(static_cast<std::size_t>(n));
    std::vector<Agent> rejected;
    rejected.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) free_now[i] = i;

    while (!free_now.empty()) {
        rejected.clear();
        for (Agent p : free_now) {
            const Agent r = proposer_list(p)[next[p]++];
            if (trace) {
                trace->proposals.push_back(proposers_are_men ? Proposal{p, r} : Proposal{r, p});
            }
            const Agent current = holder[r];
            if (current == -1) {
                holder[r] = p;
            } else if (prefers(r, p, current)) {
                holder[r] = p;
                rejected.push_back(current);
            } else {
                rejected.push_back(p);
            }
        }
        std::sort(rejected.begin(), rejected.end());
        free_now.swap(rejected);
    }

    std::vector<Agent> match(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) match[holder[r]] = r;
    return match;
}

std::vector<Agent> men_proposing(const PreferenceProfile& profile, const ListOverride* override,
                                 ProposalTrace* trace) {
    const int n = profile.size();
    if (!override) {
        return deferred_acceptance(
            n, [&](Agent m) { return profile.man_list(m); },
            [&](Agent w, Agent a, Agent b) { return profile.woman_prefers(w, a, b); }, trace, true);
    }
    if (override->side == Side::Men) {
        const Agent who = override->agent;
        const auto list = override->list;
        return deferred_acceptance(
            n, [&](Agent m) { return m == who ? list : profile.man_list(m); },
            [&](Agent w, Agent a, Agent b) { return profile.woman_prefers(w, a, b); }, trace, true);
    }
    const Agent who = override->agent;
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) rank[override->list[k]] = k;
    return deferred_acceptance(
        n, [&](Agent m) { return profile.man_list(m); },
        [&](Agent w, Agent a, Agent b) { return w == who ? rank[a] < rank[b] : profile.woman_prefers(w, a, b); },
        trace, true);
}

}  // namespace

DaResult run_da(const PreferenceProfile& profile) { return da_traced(profile); }

Matching run_da_women_proposing(const PreferenceProfile& profile) {
    const int n = profile.size();
    auto woman_to_man = deferred_acceptance(
        n, [&](Agent w) { return profile.woman_list(w); },
        [&](Agent m, Agent a, Agent b) { return profile.man_prefers(m, a, b); }, nullptr, false);
    std::vector<Agent> man_to_woman(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) man_to_woman[woman_to_man[w]] = w;
    return Matching(std::move(man_to_woman));
}

DaResult da_with_misreport(const PreferenceProfile& profile, Agent m, std::span<const Agent> list) {
    if (m < 0 || m >= profile.size()) throw Error(ErrorCode::IndexOutOfRange, "man index out of range");
    if (!is_permutation_of_n(list, profile.size())) {
        throw Error(ErrorCode::InvalidMisreport, "misreport of " + agent_name(Side::Men, m) +
                                                     " is not a permutation of the women");
    }
    const ListOverride override{Side::Men, m, list};
    return da_traced(profile, &override);
}

Matching da_matching(const PreferenceProfile& profile, const ListOverride* override) {
    return Matching(men_proposing(profile, override, nullptr));
}

DaResult da_traced(const PreferenceProfile& profile, const ListOverride* override) {
    DaResult result;
    result.matching = Matching(men_proposing(profile, override, &result.trace));
    return result;
}

}  // namespace accomplice
