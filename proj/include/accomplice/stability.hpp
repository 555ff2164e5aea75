#pragma once

#include <vector>

#include "accomplice/profile.hpp"

namespace accomplice {

using BlockingPair = Proposal;

// All (m, w) with w ≻_m μ(m) and m ≻_w μ(w), in lexicographic order.
// Throws SizeMismatch if the matching and profile disagree on n.
std::vector<BlockingPair> blocking_pairs(const Matching& matching, const PreferenceProfile& profile);

bool is_stable(const Matching& matching, const PreferenceProfile& profile);

// Every blocking pair (if any) involves man m.
bool is_m_stable(const Matching& matching, const PreferenceProfile& profile, Agent m);

// a ≽_M b: every man weakly prefers his partner in a. Dually for women.
bool men_weakly_prefer(const PreferenceProfile& profile, const Matching& a, const Matching& b);
bool women_weakly_prefer(const PreferenceProfile& profile, const Matching& a, const Matching& b);

// The stable matchings of one profile, sorted by man_to_woman.
class StableSet {
public:
    StableSet() = default;
    explicit StableSet(std::vector<Matching> matchings);

    std::size_t size() const noexcept { return matchings_.size(); }
    bool contains(const Matching& m) const;
    const std::vector<Matching>& matchings() const noexcept { return matchings_; }
    auto begin() const { return matchings_.begin(); }
    auto end() const { return matchings_.end(); }

    // Every member of this set is also a member of other.
    bool subset_of(const StableSet& other) const;

private:
    std::vector<Matching> matchings_;
};

inline constexpr int kDefaultEnumerationCap = 9;

// Depth-first extension over men in index order, pruning any partial
// assignment that already contains a blocking pair. Throws InstanceTooLarge
// when n exceeds max_n.
StableSet enumerate_stable(const PreferenceProfile& profile, int max_n = kDefaultEnumerationCap);

// Lattice operations on two stable matchings. meet gives every man the worse
// of his two partners (every woman the better); join the reverse. Both sides
// are computed independently and must agree.
// Throws InputNotStable or InconsistentLattice.
Matching meet(const Matching& mu, const Matching& mu2, const PreferenceProfile& profile);
Matching join(const Matching& mu, const Matching& mu2, const PreferenceProfile& profile);

}  // namespace accomplice
