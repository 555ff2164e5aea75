#include "accomplice/stability.hpp"

#include <algorithm>

#include "accomplice/error.hpp"

namespace accomplice {

namespace {

void check_sizes(const Matching& matching, const PreferenceProfile& profile) {
    if (matching.size() != profile.size()) {
        throw Error(ErrorCode::SizeMismatch, "matching has " + std::to_string(matching.size()) +
                                                 " men, profile has " + std::to_string(profile.size()));
    }
}

}  // namespace

std::vector<BlockingPair> blocking_pairs(const Matching& matching, const PreferenceProfile& profile) {
    check_sizes(matching, profile);
    std::vector<BlockingPair> out;
    const int n = profile.size();
    for (Agent m = 0; m < n; ++m) {
        const Agent wife = matching.woman_of(m);
        for (Agent w : profile.man_list(m)) {
            if (w == wife) break;
            if (profile.woman_prefers(w, m, matching.man_of(w))) out.push_back({m, w});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_stable(const Matching& matching, const PreferenceProfile& profile) {
    return blocking_pairs(matching, profile).empty();
}

bool is_m_stable(const Matching& matching, const PreferenceProfile& profile, Agent m) {
    const auto pairs = blocking_pairs(matching, profile);
    return std::all_of(pairs.begin(), pairs.end(), [m](const BlockingPair& p) { return p.man == m; });
}

bool men_weakly_prefer(const PreferenceProfile& profile, const Matching& a, const Matching& b) {
    for (Agent m = 0; m < profile.size(); ++m) {
        if (profile.man_prefers(m, b.woman_of(m), a.woman_of(m))) return false;
    }
    return true;
}

bool women_weakly_prefer(const PreferenceProfile& profile, const Matching& a, const Matching& b) {
    for (Agent w = 0; w < profile.size(); ++w) {
        if (profile.woman_prefers(w, b.man_of(w), a.man_of(w))) return false;
    }
    return true;
}

StableSet::StableSet(std::vector<Matching> matchings) : matchings_(std::move(matchings)) {
    std::sort(matchings_.begin(), matchings_.end());
    matchings_.erase(std::unique(matchings_.begin(), matchings_.end()), matchings_.end());
}

bool StableSet::contains(const Matching& m) const {
    return std::binary_search(matchings_.begin(), matchings_.end(), m);
}

bool StableSet::subset_of(const StableSet& other) const {
    return std::includes(other.matchings_.begin(), other.matchings_.end(), matchings_.begin(), matchings_.end());
}

StableSet enumerate_stable(const PreferenceProfile& profile, int max_n) {
    const int n = profile.size();
    if (n > max_n) {
        throw Error(ErrorCode::InstanceTooLarge, "stable-set enumeration is capped at n=" + std::to_string(max_n));
    }
    std::vector<Agent> wife(static_cast<std::size_t>(n), -1);
    std::vector<Agent> husband(static_cast<std::size_t>(n), -1);
    std::vector<Matching> found;

    // Adding (m, w) to a partial matching whose assigned pairs are mutually
    // non-blocking: only pairs involving m or w can start blocking.
    auto compatible = [&](Agent m, Agent w) {
        for (Agent m2 = 0; m2 < m; ++m2) {
            const Agent w2 = wife[m2];
            if (profile.man_prefers(m, w2, w) && profile.woman_prefers(w2, m, m2)) return false;
            if (profile.man_prefers(m2, w, w2) && profile.woman_prefers(w, m2, m)) return false;
        }
        return true;
    };

    auto extend = [&](auto&& self, Agent m) -> void {
        if (m == n) {
            found.emplace_back(wife);
            return;
        }
        for (Agent w : profile.man_list(m)) {
            if (husband[w] != -1 || !compatible(m, w)) continue;
            wife[m] = w;
            husband[w] = m;
            self(self, m + 1);
            husband[w] = -1;
            wife[m] = -1;
        }
    };
    extend(extend, 0);
    return StableSet(std::move(found));
}

namespace {

enum class LatticeOp { Meet, Join };

Matching lattice_op(const Matching& mu, const Matching& mu2, const PreferenceProfile& profile, LatticeOp op) {
    check_sizes(mu, profile);
    check_sizes(mu2, profile);
    if (!is_stable(mu, profile) || !is_stable(mu2, profile)) {
        throw Error(ErrorCode::InputNotStable, "lattice operations require stable inputs");
    }
    const int n = profile.size();
    const bool men_take_better = op == LatticeOp::Join;

    std::vector<Agent> man_side(static_cast<std::size_t>(n));
    for (Agent m = 0; m < n; ++m) {
        const Agent a = mu.woman_of(m);
        const Agent b = mu2.woman_of(m);
        const bool a_better = profile.man_prefers(m, a, b);
        man_side[m] = (a_better == men_take_better) ? a : b;
    }
    std::vector<Agent> woman_side(static_cast<std::size_t>(n));
    for (Agent w = 0; w < n; ++w) {
        const Agent a = mu.man_of(w);
        const Agent b = mu2.man_of(w);
        const bool a_better = profile.woman_prefers(w, a, b);
        woman_side[w] = (a_better != men_take_better) ? a : b;
    }
    for (Agent m = 0; m < n; ++m) {
        if (woman_side[man_side[m]] != m) {
            throw Error(ErrorCode::InconsistentLattice,
                        "man-side and woman-side assignments disagree at " + agent_name(Side::Men, m));
        }
    }
    return Matching(std::move(man_side));
}

}  // namespace

Matching meet(const Matching& mu, const Matching& mu2, const PreferenceProfile& profile) {
    return lattice_op(mu, mu2, profile, LatticeOp::Meet);
}

Matching join(const Matching& mu, const Matching& mu2, const PreferenceProfile& profile) {
    return lattice_op(mu, mu2, profile, LatticeOp::Join);
}

}  // namespace accomplice
