#include "accomplice/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"

namespace accomplice::oracle {

namespace {

void check_size(int n, int cap) {
    if (n > cap) {
        throw Error(ErrorCode::InstanceTooLarge,
                    "exhaustive search is limited to n <= " + std::to_string(cap) + " (got " + std::to_string(n) + ")");
    }
}

}  // namespace

void for_each_misreport(const PreferenceProfile& profile, Side side, Agent agent,
                        const std::function<void(std::span<const Agent>, const Matching&)>& visit) {
    const int n = profile.size();
    check_size(n, kMaxExhaustiveN);
    if (agent < 0 || agent >= n) throw Error(ErrorCode::IndexOutOfRange, "agent index out of range");
    PreferenceList list(static_cast<std::size_t>(n));
    std::iota(list.begin(), list.end(), 0);
    do {
        const PreferenceProfile substituted =
            side == Side::Men ? profile.with_man_list(agent, list) : profile.with_woman_list(agent, list);
        visit(list, run_da(substituted).matching);
    } while (std::next_permutation(list.begin(), list.end()));
}

ExhaustiveResult exhaustive_best_manipulation(const PreferenceProfile& profile, Side side, Agent agent,
                                              Agent target_w, Mode mode) {
    const int n = profile.size();
    check_size(n, kMaxExhaustiveN);
    if (target_w < 0 || target_w >= n) throw Error(ErrorCode::IndexOutOfRange, "woman index out of range");
    if (mode == Mode::SelfManipulation && (side != Side::Women || agent != target_w)) {
        throw Error(ErrorCode::IndexOutOfRange, "self manipulation is performed by the target woman");
    }
    if (mode != Mode::SelfManipulation && side != Side::Men) {
        throw Error(ErrorCode::IndexOutOfRange, "an accomplice is a man");
    }

    const Matching truthful = run_da(profile).matching;
    ExhaustiveResult best;
    std::tuple<int, int> best_key{n + 1, n + 1};

    for_each_misreport(profile, side, agent, [&](std::span<const Agent> list, const Matching& outcome) {
        ++best.lists_tried;
        int regret = 0;
        if (mode != Mode::SelfManipulation) {
            regret = profile.man_rank(agent, outcome.woman_of(agent)) -
                     profile.man_rank(agent, truthful.woman_of(agent));
            if (mode == Mode::NoRegret && regret != 0) return;
        }
        ++best.admissible;
        const Agent partner = outcome.man_of(target_w);
        const std::tuple<int, int> key{profile.woman_rank(target_w, partner), regret};
        if (key < best_key) {
            best_key = key;
            best.best_partner = partner;
            best.best_rank = std::get<0>(key);
            best.regret = regret;
            best.witness.assign(list.begin(), list.end());
        }
    });
    return best;
}

StableSet brute_force_stable_set(const PreferenceProfile& profile) {
    const int n = profile.size();
    check_size(n, 9);
    std::vector<Agent> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Matching> stable;
    do {
        Matching candidate(perm);
        bool blocked = false;
        for (Agent m = 0; m < n && !blocked; ++m) {
            for (Agent w = 0; w < n; ++w) {
                if (profile.man_rank(m, w) < profile.man_rank(m, candidate.woman_of(m)) &&
                    profile.woman_rank(w, m) < profile.woman_rank(w, candidate.man_of(w))) {
                    blocked = true;
                    break;
                }
            }
        }
        if (!blocked) stable.push_back(std::move(candidate));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return StableSet(std::move(stable));
}

}  // namespace accomplice::oracle
