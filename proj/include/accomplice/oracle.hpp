#pragma once

#include <functional>
#include <span>
#include <vector>

#include "accomplice/profile.hpp"
#include "accomplice/stability.hpp"

// Brute-force ground truth. Nothing in here shares search code with the
// manipulation solvers: every misreport is materialised as a full profile and
// run through the plain men-proposing DA.
namespace accomplice::oracle {

enum class Mode { NoRegret, WithRegret, SelfManipulation };

inline constexpr int kMaxExhaustiveN = 7;

struct ExhaustiveResult {
    Agent best_partner = -1;  // target woman's partner in the best outcome
    int best_rank = 0;        // its position in her true list
    int regret = 0;           // accomplice regret of the witness (0 for self)
    PreferenceList witness;   // lexicographically first list achieving the optimum
    std::size_t lists_tried = 0;
    std::size_t admissible = 0;  // lists passing the mode filter
};

// Calls visit(list, outcome) for every permutation list of the agent, in
// lexicographic order, with outcome = DA of the profile using that list.
// Throws InstanceTooLarge above kMaxExhaustiveN.
void for_each_misreport(const PreferenceProfile& profile, Side side, Agent agent,
                        const std::function<void(std::span<const Agent>, const Matching&)>& visit);

// Best true-rank partner for target_w over every list of the agent. NoRegret
// keeps only lists leaving the accomplice's partner unchanged. Ties: lower
// regret, then lexicographically smaller list. For SelfManipulation the agent
// must be the target woman (side Women).
ExhaustiveResult exhaustive_best_manipulation(const PreferenceProfile& profile, Side side, Agent agent,
                                              Agent target_w, Mode mode);

// Stable matchings by filtering all n! perfect matchings.
StableSet brute_force_stable_set(const PreferenceProfile& profile);

}  // namespace accomplice::oracle
