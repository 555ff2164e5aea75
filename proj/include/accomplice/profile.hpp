#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace accomplice {

// 0-based index of a man or a woman. Which side is always clear from context;
// external formats use 1-based names ("m3", "w1").
using Agent = std::int32_t;
using PreferenceList = std::vector<Agent>;

enum class Side { Men, Women };

std::string agent_name(Side side, Agent index);

// Parses "m3" / "w1" style names. Returns nullopt on a malformed name or on
// the wrong side prefix; range checking against n is left to the caller.
std::optional<Agent> parse_agent_name(Side side, std::string_view name);

// Balanced instance with strict, complete preference lists on both sides.
// Immutable once built; rank tables are derived at construction.
class PreferenceProfile {
public:
    PreferenceProfile() = default;

    // Validates that every list is a permutation of 0..n-1 and that both
    // sides have n agents. Throws Error on violation.
    static PreferenceProfile from_lists(const std::vector<PreferenceList>& men,
                                        const std::vector<PreferenceList>& women);

    int size() const noexcept { return n_; }

    std::span<const Agent> man_list(Agent m) const {
        return {men_prefs_.data() + static_cast<std::size_t>(m) * n_, static_cast<std::size_t>(n_)};
    }
    std::span<const Agent> woman_list(Agent w) const {
        return {women_prefs_.data() + static_cast<std::size_t>(w) * n_, static_cast<std::size_t>(n_)};
    }
    std::span<const Agent> list(Side side, Agent a) const {
        return side == Side::Men ? man_list(a) : woman_list(a);
    }

    // Position (0 = best) of w in m's list, and of m in w's list.
    int man_rank(Agent m, Agent w) const { return men_rank_[static_cast<std::size_t>(m) * n_ + w]; }
    int woman_rank(Agent w, Agent m) const { return women_rank_[static_cast<std::size_t>(w) * n_ + m]; }

    bool man_prefers(Agent m, Agent a, Agent b) const { return man_rank(m, a) < man_rank(m, b); }
    bool woman_prefers(Agent w, Agent a, Agent b) const { return woman_rank(w, a) < woman_rank(w, b); }

    // Copy of the profile with one agent's list replaced (validated).
    PreferenceProfile with_man_list(Agent m, std::span<const Agent> list) const;
    PreferenceProfile with_woman_list(Agent w, std::span<const Agent> list) const;

    std::vector<PreferenceList> men_lists() const;
    std::vector<PreferenceList> women_lists() const;

    bool operator==(const PreferenceProfile& other) const {
        return n_ == other.n_ && men_prefs_ == other.men_prefs_ && women_prefs_ == other.women_prefs_;
    }

private:
    int n_ = 0;
    std::vector<Agent> men_prefs_;
    std::vector<Agent> women_prefs_;
    std::vector<int> men_rank_;
    std::vector<int> women_rank_;
};

// True iff list is a permutation of 0..n-1.
bool is_permutation_of_n(std::span<const Agent> list, int n);

// Perfect matching between men and women.
class Matching {
public:
    Matching() = default;

    // Throws IndexOutOfRange for an index outside 0..n-1 and DuplicateEntry
    // if two men share a woman.
    explicit Matching(std::vector<Agent> man_to_woman);

    static Matching identity(int n);

    int size() const noexcept { return static_cast<int>(man_to_woman_.size()); }
    Agent woman_of(Agent m) const { return man_to_woman_[m]; }
    Agent man_of(Agent w) const { return woman_to_man_[w]; }
    const std::vector<Agent>& man_to_woman() const noexcept { return man_to_woman_; }

    bool operator==(const Matching& other) const { return man_to_woman_ == other.man_to_woman_; }
    std::strong_ordering operator<=>(const Matching& other) const {
        return man_to_woman_ <=> other.man_to_woman_;
    }

private:
    std::vector<Agent> man_to_woman_;
    std::vector<Agent> woman_to_man_;
};

// "m1 -- w3" lines, one per man.
std::string format_matching(const Matching& matching);

// A man's list decomposed around a pivot woman: (above, pivot, below).
struct SplitPreference {
    PreferenceList above;
    Agent pivot = -1;
    PreferenceList below;

    PreferenceList joined() const;
    bool operator==(const SplitPreference&) const = default;
};

SplitPreference split_list(std::span<const Agent> list, Agent pivot);
SplitPreference split_at(const PreferenceProfile& profile, Agent m, Agent pivot);

// Where promoted women land inside the upper part. Which slot is used does not
// change the no-regret outcome; ImmediatelyAbovePivot is the layout the
// inconspicuous search uses.
enum class Placement { FrontOfAbove, ImmediatelyAbovePivot };

// (above + X, pivot, below \ X); X keeps its relative order from the split.
// Members of X already above the pivot stay where they are.
PreferenceList push_up(const SplitPreference& split, std::span<const Agent> promoted,
                       Placement placement = Placement::FrontOfAbove);

// (above \ Y, pivot, Y + below); Y lands immediately below the pivot in its
// relative order. Every member of Y must be above the pivot.
PreferenceList push_down(const SplitPreference& split, std::span<const Agent> demoted);

// Both operations against the same split: X up (front of above), Y down.
PreferenceList push_up_down(const SplitPreference& split, std::span<const Agent> promoted,
                            std::span<const Agent> demoted);

// The list with `agent` moved to `position` (which must not be below its
// current position). position == current position returns the list unchanged.
PreferenceList promote(std::span<const Agent> list, Agent agent, std::size_t position);

struct Proposal {
    Agent man = 0;
    Agent woman = 0;
    auto operator<=>(const Proposal&) const = default;
};

// Proposals in deferred-acceptance execution order.
struct ProposalTrace {
    std::vector<Proposal> proposals;

    // Sorted, de-duplicated copy for set comparisons.
    std::vector<Proposal> as_set() const;
};

// Text format:
//   n=<int>
//   m<i>: w<a> w<b> ...
//   w<j>: m<a> m<b> ...
// '#' starts a comment line. The n= line is optional (n is then the number
// of man lines). JSON input ({"n":..,"men":[[..]],"women":[[..]]}, 1-based)
// is detected by a leading '{'.
PreferenceProfile parse_profile(std::string_view text);
PreferenceProfile parse_profile_text(std::string_view text);
PreferenceProfile parse_profile_json(std::string_view text);

std::string to_text(const PreferenceProfile& profile);
std::string to_json(const PreferenceProfile& profile);

}  // namespace accomplice
