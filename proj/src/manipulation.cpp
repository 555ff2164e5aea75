#include "accomplice/manipulation.hpp"

#include <algorithm>
#include <tuple>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/stability.hpp"

namespace accomplice {

std::string_view to_string(Strategy strategy) noexcept {
    switch (strategy) {
        case Strategy::SelfManipulation: return "self";
        case Strategy::AccompliceNoRegret: return "accomplice-no-regret";
        case Strategy::AccompliceWithRegret: return "accomplice-with-regret";
    }
    return "unknown";
}

namespace {

void check_man(const PreferenceProfile& profile, Agent m) {
    if (m < 0 || m >= profile.size()) throw Error(ErrorCode::IndexOutOfRange, "man index out of range");
}

void check_woman(const PreferenceProfile& profile, Agent w) {
    if (w < 0 || w >= profile.size()) throw Error(ErrorCode::IndexOutOfRange, "woman index out of range");
}

// Ordering key of a candidate: w's true rank of her partner, the regret it
// costs, then promoted agent and slot. Truth-telling uses -1 so it wins ties.
using CandidateKey = std::tuple<int, int, Agent, long long>;

ManipulationResult truthful_result(const PreferenceProfile& profile, Strategy strategy, Agent manipulator,
                                   Agent w, const Matching& truthful) {
    ManipulationResult r;
    r.strategy = strategy;
    r.manipulator = manipulator;
    r.target_woman = w;
    const auto list = strategy == Strategy::SelfManipulation ? profile.woman_list(manipulator)
                                                              : profile.man_list(manipulator);
    r.misreport.assign(list.begin(), list.end());
    r.outcome = truthful;
    return r;
}

ManipulationResult solve_accomplice(const PreferenceProfile& profile, const Matching& truthful, Agent m, Agent w,
                                    AccompliceMode mode) {
    const Strategy strategy =
        mode == AccompliceMode::NoRegret ? Strategy::AccompliceNoRegret : Strategy::AccompliceWithRegret;
    ManipulationResult best = truthful_result(profile, strategy, m, w, truthful);
    CandidateKey best_key{profile.woman_rank(w, truthful.man_of(w)), 0, -1, -1};
    const int base_rank_m = profile.man_rank(m, truthful.woman_of(m));

    for (auto& candidate : accomplice_candidates(profile, m, truthful)) {
        const ListOverride override{Side::Men, m, candidate.list};
        Matching outcome = da_matching(profile, &override);
        const int regret = profile.man_rank(m, outcome.woman_of(m)) - base_rank_m;
        if (mode == AccompliceMode::NoRegret && regret != 0) continue;
        const CandidateKey key{profile.woman_rank(w, outcome.man_of(w)), regret, candidate.promoted,
                               static_cast<long long>(candidate.position)};
        if (key < best_key) {
            best_key = key;
            best.misreport = std::move(candidate.list);
            best.promoted_agent = candidate.promoted;
            best.promoted_position = candidate.position;
            best.outcome = std::move(outcome);
        }
    }
    return classify_outcome(profile, std::move(best));
}

ManipulationResult solve_self(const PreferenceProfile& profile, const Matching& truthful, Agent w) {
    ManipulationResult best = truthful_result(profile, Strategy::SelfManipulation, w, w, truthful);
    CandidateKey best_key{profile.woman_rank(w, truthful.man_of(w)), 0, -1, -1};

    for (auto& candidate : self_candidates(profile, w, truthful)) {
        const ListOverride override{Side::Women, w, candidate.list};
        Matching outcome = da_matching(profile, &override);
        const CandidateKey key{profile.woman_rank(w, outcome.man_of(w)), 0, candidate.promoted,
                               static_cast<long long>(candidate.position)};
        if (key < best_key) {
            best_key = key;
            best.misreport = std::move(candidate.list);
            best.promoted_agent = candidate.promoted;
            best.promoted_position = candidate.position;
            best.outcome = std::move(outcome);
        }
    }
    return classify_outcome(profile, std::move(best));
}

}  // namespace

std::vector<PromotionCandidate> accomplice_candidates(const PreferenceProfile& profile, Agent m,
                                                      const Matching& truthful) {
    check_man(profile, m);
    const auto list = profile.man_list(m);
    const auto pivot_pos = static_cast<std::size_t>(profile.man_rank(m, truthful.woman_of(m)));
    std::vector<PromotionCandidate> out;
    out.reserve(list.size() - pivot_pos - 1);
    for (std::size_t k = pivot_pos + 1; k < list.size(); ++k) {
        out.push_back({list[k], pivot_pos, promote(list, list[k], pivot_pos)});
    }
    return out;
}

std::vector<PromotionCandidate> self_candidates(const PreferenceProfile& profile, Agent w,
                                                const Matching& truthful) {
    check_woman(profile, w);
    const auto list = profile.woman_list(w);
    const auto pivot_pos = static_cast<std::size_t>(profile.woman_rank(w, truthful.man_of(w)));
    std::vector<PromotionCandidate> out;
    out.reserve((list.size() - pivot_pos - 1) * (pivot_pos + 1));
    for (std::size_t k = pivot_pos + 1; k < list.size(); ++k) {
        for (std::size_t pos = 0; pos <= pivot_pos; ++pos) {
            out.push_back({list[k], pos, promote(list, list[k], pos)});
        }
    }
    return out;
}

ManipulationResult optimal_accomplice(const PreferenceProfile& profile, Agent m, Agent w, AccompliceMode mode) {
    check_man(profile, m);
    check_woman(profile, w);
    return solve_accomplice(profile, da_matching(profile), m, w, mode);
}

ManipulationResult optimal_accomplice_no_regret(const PreferenceProfile& profile, Agent m, Agent w) {
    return optimal_accomplice(profile, m, w, AccompliceMode::NoRegret);
}

ManipulationResult optimal_accomplice_with_regret(const PreferenceProfile& profile, Agent m, Agent w) {
    return optimal_accomplice(profile, m, w, AccompliceMode::WithRegret);
}

ManipulationResult optimal_self(const PreferenceProfile& profile, Agent w) {
    check_woman(profile, w);
    return solve_self(profile, da_matching(profile), w);
}

ManipulationResult best_accomplice(const PreferenceProfile& profile, Agent w, std::span<const Agent> pool,
                                   AccompliceMode mode) {
    if (pool.empty()) throw Error(ErrorCode::EmptyPool, "accomplice pool is empty");
    check_woman(profile, w);
    for (Agent m : pool) check_man(profile, m);

    const Matching truthful = da_matching(profile);
    std::optional<ManipulationResult> best;
    std::tuple<int, int, Agent> best_key{};
    for (Agent m : pool) {
        ManipulationResult r = solve_accomplice(profile, truthful, m, w, mode);
        const std::tuple<int, int, Agent> key{-r.improvement, r.regret, m};
        if (!best || key < best_key) {
            best_key = key;
            best = std::move(r);
        }
    }
    return *best;
}

ManipulationResult classify_outcome(const PreferenceProfile& profile, ManipulationResult result) {
    const Matching truthful = da_matching(profile);
    const Agent w = result.target_woman;
    check_woman(profile, w);
    result.improvement =
        profile.woman_rank(w, truthful.man_of(w)) - profile.woman_rank(w, result.outcome.man_of(w));

    const auto pairs = blocking_pairs(result.outcome, profile);
    result.outcome_stable_wrt_truth = pairs.empty();
    if (result.strategy == Strategy::SelfManipulation) {
        result.regret = 0;
        result.outcome_m_stable_wrt_truth =
            std::all_of(pairs.begin(), pairs.end(), [w](const BlockingPair& p) { return p.woman == w; });
    } else {
        const Agent m = result.manipulator;
        check_man(profile, m);
        result.regret = profile.man_rank(m, result.outcome.woman_of(m)) - profile.man_rank(m, truthful.woman_of(m));
        result.outcome_m_stable_wrt_truth =
            std::all_of(pairs.begin(), pairs.end(), [m](const BlockingPair& p) { return p.man == m; });
    }
    return result;
}

ManipulationResult evaluate_misreport(const PreferenceProfile& profile, Strategy strategy, Agent manipulator,
                                      Agent target_woman, std::span<const Agent> misreport) {
    check_woman(profile, target_woman);
    if (!is_permutation_of_n(misreport, profile.size())) {
        throw Error(ErrorCode::InvalidMisreport, "misreport is not a permutation");
    }
    ManipulationResult r;
    r.strategy = strategy;
    r.manipulator = manipulator;
    r.target_woman = target_woman;
    r.misreport.assign(misreport.begin(), misreport.end());
    if (strategy == Strategy::SelfManipulation) {
        if (manipulator != target_woman) {
            throw Error(ErrorCode::IndexOutOfRange, "self manipulation is performed by the target woman");
        }
        const ListOverride override{Side::Women, manipulator, misreport};
        r.outcome = da_matching(profile, &override);
    } else {
        check_man(profile, manipulator);
        const ListOverride override{Side::Men, manipulator, misreport};
        r.outcome = da_matching(profile, &override);
    }
    return classify_outcome(profile, std::move(r));
}

std::vector<int> accomplice_improvement_by_woman(const PreferenceProfile& profile, AccompliceMode mode,
                                                 std::span<const Agent> pool) {
    const int n = profile.size();
    std::vector<Agent> all_men;
    if (pool.empty()) {
        for (Agent m = 0; m < n; ++m) all_men.push_back(m);
        pool = all_men;
    }
    const Matching truthful = da_matching(profile);
    std::vector<int> base_rank(static_cast<std::size_t>(n));
    for (Agent w = 0; w < n; ++w) base_rank[w] = profile.woman_rank(w, truthful.man_of(w));

    std::vector<int> best(static_cast<std::size_t>(n), 0);
    for (Agent m : pool) {
        check_man(profile, m);
        for (const auto& candidate : accomplice_candidates(profile, m, truthful)) {
            const ListOverride override{Side::Men, m, candidate.list};
            const Matching outcome = da_matching(profile, &override);
            if (mode == AccompliceMode::NoRegret && outcome.woman_of(m) != truthful.woman_of(m)) continue;
            for (Agent w = 0; w < n; ++w) {
                best[w] = std::max(best[w], base_rank[w] - profile.woman_rank(w, outcome.man_of(w)));
            }
        }
    }
    return best;
}

std::vector<int> self_improvement_by_woman(const PreferenceProfile& profile) {
    const Matching truthful = da_matching(profile);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(profile.size()));
    for (Agent w = 0; w < profile.size(); ++w) out.push_back(solve_self(profile, truthful, w).improvement);
    return out;
}

}  // namespace accomplice
