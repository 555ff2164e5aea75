#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "accomplice/profile.hpp"

namespace accomplice {

enum class Strategy { SelfManipulation, AccompliceNoRegret, AccompliceWithRegret };
enum class AccompliceMode { NoRegret, WithRegret };

std::string_view to_string(Strategy strategy) noexcept;

// A misreport on behalf of target_woman together with its DA outcome.
//
// manipulator is the accomplice man, or the woman herself for
// SelfManipulation. improvement and regret are rank differences measured on
// true lists: improvement = rank_w(μ(w)) - rank_w(μ'(w)) and
// regret = rank_m(μ'(m)) - rank_m(μ(m)) (zero for self manipulation).
struct ManipulationResult {
    Strategy strategy = Strategy::AccompliceNoRegret;
    Agent manipulator = 0;
    Agent target_woman = 0;
    PreferenceList misreport;
    std::optional<Agent> promoted_agent;  // empty when truth-telling is optimal
    std::optional<std::size_t> promoted_position;
    Matching outcome;
    int improvement = 0;
    int regret = 0;
    bool outcome_stable_wrt_truth = true;
    // Accomplice strategies: every blocking pair involves the accomplice.
    // Self manipulation: every blocking pair involves the woman herself.
    bool outcome_m_stable_wrt_truth = true;
};

// One inconspicuous misreport: `promoted` moved to `position` in the list.
struct PromotionCandidate {
    Agent promoted = 0;
    std::size_t position = 0;
    PreferenceList list;
};

// Accomplice m: every woman strictly below μ(m) placed immediately above μ(m).
std::vector<PromotionCandidate> accomplice_candidates(const PreferenceProfile& profile, Agent m,
                                                      const Matching& truthful);

// Woman w: every man strictly below μ(w) placed at each position above μ(w).
std::vector<PromotionCandidate> self_candidates(const PreferenceProfile& profile, Agent w,
                                                const Matching& truthful);

// Best single promotion by accomplice m for woman w whose outcome keeps m's
// partner unchanged; truth-telling when nothing helps. O(n^3).
ManipulationResult optimal_accomplice_no_regret(const PreferenceProfile& profile, Agent m, Agent w);

// As above but the accomplice may end up worse off. Among promotions giving w
// the same partner, the one costing m the least regret wins.
ManipulationResult optimal_accomplice_with_regret(const PreferenceProfile& profile, Agent m, Agent w);

ManipulationResult optimal_accomplice(const PreferenceProfile& profile, Agent m, Agent w, AccompliceMode mode);

// Best single promotion in w's own list, judged by her true list.
ManipulationResult optimal_self(const PreferenceProfile& profile, Agent w);

// Best accomplice from pool for woman w: best partner for w, then lowest
// regret, then lowest accomplice index. Throws EmptyPool.
ManipulationResult best_accomplice(const PreferenceProfile& profile, Agent w, std::span<const Agent> pool,
                                   AccompliceMode mode);

// Recomputes improvement, regret and the stability flags of result.outcome
// against the true profile.
ManipulationResult classify_outcome(const PreferenceProfile& profile, ManipulationResult result);

// Runs DA with the given misreport and classifies it. For SelfManipulation the
// manipulator must equal target_woman.
ManipulationResult evaluate_misreport(const PreferenceProfile& profile, Strategy strategy, Agent manipulator,
                                      Agent target_woman, std::span<const Agent> misreport);

// For every woman, the largest improvement any single accomplice from pool
// (all men when pool is empty) can achieve for her. Evaluates each
// accomplice's candidates once and scores every woman from the same run.
std::vector<int> accomplice_improvement_by_woman(const PreferenceProfile& profile, AccompliceMode mode,
                                                 std::span<const Agent> pool = {});

// For every woman, the improvement of her optimal self manipulation.
std::vector<int> self_improvement_by_woman(const PreferenceProfile& profile);

}  // namespace accomplice
