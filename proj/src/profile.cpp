#include "accomplice/profile.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "accomplice/error.hpp"

namespace accomplice {

std::string agent_name(Side side, Agent index) {
    return (side == Side::Men ? "m" : "w") + std::to_string(index + 1);
}

std::optional<Agent> parse_agent_name(Side side, std::string_view name) {
    const char prefix = side == Side::Men ? 'm' : 'w';
    if (name.size() < 2 || name.front() != prefix) return std::nullopt;
    Agent value = 0;
    const auto* first = name.data() + 1;
    const auto* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || value < 1) return std::nullopt;
    return value - 1;
}

bool is_permutation_of_n(std::span<const Agent> list, int n) {
    if (static_cast<int>(list.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Agent a : list) {
        if (a < 0 || a >= n || seen[a]) return false;
        seen[a] = true;
    }
    return true;
}

namespace {

void check_list(std::span<const Agent> list, int n, Side owner, Agent index) {
    const std::string who = agent_name(owner, index);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Agent a : list) {
        if (a < 0 || a >= n) {
            throw Error(ErrorCode::IndexOutOfRange, who + " lists an agent outside 1.." + std::to_string(n));
        }
        if (seen[a]) {
            throw Error(ErrorCode::DuplicateEntry,
                        who + " lists " + agent_name(owner == Side::Men ? Side::Women : Side::Men, a) + " twice");
        }
        seen[a] = true;
    }
    if (static_cast<int>(list.size()) != n) {
        throw Error(ErrorCode::IncompleteList, who + " lists " + std::to_string(list.size()) +
                                                   " agents, expected " + std::to_string(n));
    }
}

void fill_ranks(const std::vector<Agent>& prefs, std::vector<int>& ranks, int n) {
    ranks.assign(prefs.size(), 0);
    for (int a = 0; a < n; ++a) {
        for (int k = 0; k < n; ++k) {
            ranks[static_cast<std::size_t>(a) * n + prefs[static_cast<std::size_t>(a) * n + k]] = k;
        }
    }
}

}  // namespace

PreferenceProfile PreferenceProfile::from_lists(const std::vector<PreferenceList>& men,
                                                const std::vector<PreferenceList>& women) {
    if (men.size() != women.size()) {
        throw Error(ErrorCode::SizeMismatch, std::to_string(men.size()) + " men but " +
                                                 std::to_string(women.size()) + " women");
    }
    if (men.empty()) throw Error(ErrorCode::SizeMismatch, "instance has no agents");

    PreferenceProfile p;
    p.n_ = static_cast<int>(men.size());
    const auto n = static_cast<std::size_t>(p.n_);
    p.men_prefs_.reserve(n * n);
    p.women_prefs_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        check_list(men[i], p.n_, Side::Men, static_cast<Agent>(i));
        p.men_prefs_.insert(p.men_prefs_.end(), men[i].begin(), men[i].end());
    }
    for (std::size_t i = 0; i < n; ++i) {
        check_list(women[i], p.n_, Side::Women, static_cast<Agent>(i));
        p.women_prefs_.insert(p.women_prefs_.end(), women[i].begin(), women[i].end());
    }
    fill_ranks(p.men_prefs_, p.men_rank_, p.n_);
    fill_ranks(p.women_prefs_, p.women_rank_, p.n_);
    return p;
}

PreferenceProfile PreferenceProfile::with_man_list(Agent m, std::span<const Agent> list) const {
    if (m < 0 || m >= n_) throw Error(ErrorCode::IndexOutOfRange, "man index out of range");
    if (!is_permutation_of_n(list, n_)) {
        throw Error(ErrorCode::InvalidMisreport, "replacement list for " + agent_name(Side::Men, m) +
                                                     " is not a permutation of the women");
    }
    PreferenceProfile p = *this;
    std::copy(list.begin(), list.end(), p.men_prefs_.begin() + static_cast<std::ptrdiff_t>(m) * n_);
    for (int k = 0; k < n_; ++k) p.men_rank_[static_cast<std::size_t>(m) * n_ + list[k]] = k;
    return p;
}

PreferenceProfile PreferenceProfile::with_woman_list(Agent w, std::span<const Agent> list) const {
    if (w < 0 || w >= n_) throw Error(ErrorCode::IndexOutOfRange, "woman index out of range");
    if (!is_permutation_of_n(list, n_)) {
        throw Error(ErrorCode::InvalidMisreport, "replacement list for " + agent_name(Side::Women, w) +
                                                     " is not a permutation of the men");
    }
    PreferenceProfile p = *this;
    std::copy(list.begin(), list.end(), p.women_prefs_.begin() + static_cast<std::ptrdiff_t>(w) * n_);
    for (int k = 0; k < n_; ++k) p.women_rank_[static_cast<std::size_t>(w) * n_ + list[k]] = k;
    return p;
}

std::vector<PreferenceList> PreferenceProfile::men_lists() const {
    std::vector<PreferenceList> out;
    for (Agent m = 0; m < n_; ++m) out.emplace_back(man_list(m).begin(), man_list(m).end());
    return out;
}

std::vector<PreferenceList> PreferenceProfile::women_lists() const {
    std::vector<PreferenceList> out;
    for (Agent w = 0; w < n_; ++w) out.emplace_back(woman_list(w).begin(), woman_list(w).end());
    return out;
}

Matching::Matching(std::vector<Agent> man_to_woman) : man_to_woman_(std::move(man_to_woman)) {
    const auto n = man_to_woman_.size();
    woman_to_man_.assign(n, -1);
    for (std::size_t m = 0; m < n; ++m) {
        const Agent w = man_to_woman_[m];
        if (w < 0 || static_cast<std::size_t>(w) >= n) {
            throw Error(ErrorCode::IndexOutOfRange, "matching assigns a woman outside 0..n-1");
        }
        if (woman_to_man_[w] != -1) {
            throw Error(ErrorCode::DuplicateEntry, agent_name(Side::Women, w) + " is matched twice");
        }
        woman_to_man_[w] = static_cast<Agent>(m);
    }
}

Matching Matching::identity(int n) {
    std::vector<Agent> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = i;
    return Matching(std::move(v));
}

std::string format_matching(const Matching& matching) {
    std::string out;
    for (Agent m = 0; m < matching.size(); ++m) {
        out += agent_name(Side::Men, m) + " -- " + agent_name(Side::Women, matching.woman_of(m)) + "\n";
    }
    return out;
}

PreferenceList SplitPreference::joined() const {
    PreferenceList out(above);
    out.push_back(pivot);
    out.insert(out.end(), below.begin(), below.end());
    return out;
}

SplitPreference split_list(std::span<const Agent> list, Agent pivot) {
    auto it = std::find(list.begin(), list.end(), pivot);
    if (it == list.end()) throw Error(ErrorCode::IndexOutOfRange, "pivot does not appear in the list");
    SplitPreference s;
    s.above.assign(list.begin(), it);
    s.pivot = pivot;
    s.below.assign(it + 1, list.end());
    return s;
}

SplitPreference split_at(const PreferenceProfile& profile, Agent m, Agent pivot) {
    const int n = profile.size();
    if (m < 0 || m >= n || pivot < 0 || pivot >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "split_at index out of range");
    }
    return split_list(profile.man_list(m), pivot);
}

namespace {

bool contains(std::span<const Agent> set, Agent a) {
    return std::find(set.begin(), set.end(), a) != set.end();
}

void check_members(const SplitPreference& split, std::span<const Agent> set) {
    const auto n = static_cast<Agent>(split.above.size() + split.below.size() + 1);
    for (Agent a : set) {
        if (a == split.pivot) throw Error(ErrorCode::PivotInSet, "the pivot cannot be moved");
        if (a < 0 || a >= n) throw Error(ErrorCode::IndexOutOfRange, "woman index out of range");
    }
}

}  // namespace

PreferenceList push_up(const SplitPreference& split, std::span<const Agent> promoted, Placement placement) {
    check_members(split, promoted);
    PreferenceList moved;
    PreferenceList rest_below;
    for (Agent a : split.below) (contains(promoted, a) ? moved : rest_below).push_back(a);

    PreferenceList out;
    out.reserve(split.above.size() + split.below.size() + 1);
    if (placement == Placement::FrontOfAbove) {
        out.insert(out.end(), moved.begin(), moved.end());
        out.insert(out.end(), split.above.begin(), split.above.end());
    } else {
        out.insert(out.end(), split.above.begin(), split.above.end());
        out.insert(out.end(), moved.begin(), moved.end());
    }
    out.push_back(split.pivot);
    out.insert(out.end(), rest_below.begin(), rest_below.end());
    return out;
}

PreferenceList push_down(const SplitPreference& split, std::span<const Agent> demoted) {
    check_members(split, demoted);
    for (Agent a : demoted) {
        if (!contains(split.above, a)) {
            throw Error(ErrorCode::NotAbovePivot, agent_name(Side::Women, a) + " is not above the pivot");
        }
    }
    PreferenceList out;
    PreferenceList moved;
    for (Agent a : split.above) (contains(demoted, a) ? moved : out).push_back(a);
    out.push_back(split.pivot);
    out.insert(out.end(), moved.begin(), moved.end());
    out.insert(out.end(), split.below.begin(), split.below.end());
    return out;
}

PreferenceList push_up_down(const SplitPreference& split, std::span<const Agent> promoted,
                            std::span<const Agent> demoted) {
    for (Agent a : promoted) {
        if (contains(demoted, a)) {
            throw Error(ErrorCode::DuplicateEntry, "a woman cannot be pushed up and down at once");
        }
    }
    const PreferenceList lowered = push_down(split, demoted);
    return push_up(split_list(lowered, split.pivot), promoted, Placement::FrontOfAbove);
}

PreferenceList promote(std::span<const Agent> list, Agent agent, std::size_t position) {
    auto it = std::find(list.begin(), list.end(), agent);
    if (it == list.end()) throw Error(ErrorCode::IndexOutOfRange, "promoted agent not in list");
    const auto current = static_cast<std::size_t>(it - list.begin());
    if (position > current) throw Error(ErrorCode::IndexOutOfRange, "promotion target is below the agent");
    PreferenceList out(list.begin(), list.end());
    std::rotate(out.begin() + static_cast<std::ptrdiff_t>(position),
                out.begin() + static_cast<std::ptrdiff_t>(current),
                out.begin() + static_cast<std::ptrdiff_t>(current) + 1);
    return out;
}

std::vector<Proposal> ProposalTrace::as_set() const {
    std::vector<Proposal> out(proposals);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Text / JSON formats

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

struct RawList {
    std::size_t line = 0;
    PreferenceList entries;
};

}  // namespace

PreferenceProfile parse_profile(std::string_view text) {
    const auto body = trim(text.substr(0, std::min<std::size_t>(text.size(), 64)));
    if (!body.empty() && body.front() == '{') return parse_profile_json(text);
    return parse_profile_text(text);
}

PreferenceProfile parse_profile_text(std::string_view text) {
    std::optional<int> declared_n;
    std::size_t n_line = 0;
    std::vector<std::optional<RawList>> men;
    std::vector<std::optional<RawList>> women;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (line.rfind("n=", 0) == 0 || line.rfind("n =", 0) == 0) {
            const auto value = trim(line.substr(line.find('=') + 1));
            int n = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
            if (ec != std::errc{} || ptr != value.data() + value.size() || n < 1) {
                throw ParseError(ErrorCode::MalformedLine, line_no, "bad size declaration '" + std::string(line) + "'");
            }
            if (declared_n) throw ParseError(ErrorCode::DuplicateEntry, line_no, "size declared twice");
            declared_n = n;
            n_line = line_no;
            continue;
        }

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(ErrorCode::MalformedLine, line_no, "expected '<agent>: <list>' in '" + std::string(line) + "'");
        }
        const auto owner = trim(line.substr(0, colon));
        Side side;
        if (!owner.empty() && owner.front() == 'm') {
            side = Side::Men;
        } else if (!owner.empty() && owner.front() == 'w') {
            side = Side::Women;
        } else {
            throw ParseError(ErrorCode::MalformedLine, line_no, "unknown agent '" + std::string(owner) + "'");
        }
        const auto index = parse_agent_name(side, owner);
        if (!index) throw ParseError(ErrorCode::MalformedLine, line_no, "unknown agent '" + std::string(owner) + "'");
        const Side other = side == Side::Men ? Side::Women : Side::Men;

        RawList parsed;
        parsed.line = line_no;
        std::vector<bool> seen;
        for (auto token : split_ws(line.substr(colon + 1))) {
            const auto a = parse_agent_name(other, token);
            if (!a) throw ParseError(ErrorCode::MalformedLine, line_no, "bad entry '" + std::string(token) + "'");
            if (static_cast<std::size_t>(*a) >= seen.size()) seen.resize(static_cast<std::size_t>(*a) + 1, false);
            if (seen[*a]) {
                throw ParseError(ErrorCode::DuplicateEntry, line_no,
                                 std::string(owner) + " lists " + std::string(token) + " twice");
            }
            seen[*a] = true;
            parsed.entries.push_back(*a);
        }

        auto& table = side == Side::Men ? men : women;
        if (static_cast<std::size_t>(*index) >= table.size()) table.resize(static_cast<std::size_t>(*index) + 1);
        if (table[*index]) {
            throw ParseError(ErrorCode::DuplicateEntry, line_no, std::string(owner) + " has two lists");
        }
        table[*index] = std::move(parsed);
    }

    const int n = declared_n.value_or(static_cast<int>(men.size()));
    if (n < 1) throw ParseError(ErrorCode::SizeMismatch, 0, "no preference lists found");

    auto collect = [&](std::vector<std::optional<RawList>>& table, Side side) {
        if (static_cast<int>(table.size()) > n) {
            const auto& extra = table[static_cast<std::size_t>(n)];
            throw ParseError(ErrorCode::SizeMismatch, extra ? extra->line : n_line,
                             agent_name(side, n) + " exceeds the declared size " + std::to_string(n));
        }
        std::vector<PreferenceList> lists;
        for (int i = 0; i < n; ++i) {
            if (i >= static_cast<int>(table.size()) || !table[i]) {
                throw ParseError(ErrorCode::SizeMismatch, 0,
                                 "missing list for " + agent_name(side, i) + " (n=" + std::to_string(n) + ")");
            }
            const auto& raw = *table[i];
            for (Agent a : raw.entries) {
                if (a >= n) {
                    throw ParseError(ErrorCode::IndexOutOfRange, raw.line,
                                     agent_name(side == Side::Men ? Side::Women : Side::Men, a) +
                                         " is outside 1.." + std::to_string(n));
                }
            }
            if (static_cast<int>(raw.entries.size()) < n) {
                throw ParseError(ErrorCode::IncompleteList, raw.line,
                                 agent_name(side, i) + " lists " + std::to_string(raw.entries.size()) +
                                     " of " + std::to_string(n) + " agents");
            }
            lists.push_back(raw.entries);
        }
        return lists;
    };

    auto men_lists = collect(men, Side::Men);
    auto women_lists = collect(women, Side::Women);
    return PreferenceProfile::from_lists(men_lists, women_lists);
}

PreferenceProfile parse_profile_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ErrorCode::MalformedLine, 0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("men") || !doc.contains("women")) {
        throw ParseError(ErrorCode::MalformedLine, 0, "JSON profile needs \"men\" and \"women\" arrays");
    }
    auto read_side = [](const nlohmann::json& rows, Side side) {
        if (!rows.is_array()) throw ParseError(ErrorCode::MalformedLine, 0, "preference table must be an array");
        std::vector<PreferenceList> lists;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (!row.is_array()) throw ParseError(ErrorCode::MalformedLine, 0, "preference list must be an array");
            PreferenceList list;
            std::vector<bool> seen;
            for (const auto& v : row) {
                if (!v.is_number_integer() || v.get<long long>() < 1) {
                    throw ParseError(ErrorCode::MalformedLine, 0,
                                     "entries of " + agent_name(side, static_cast<Agent>(i)) + " must be 1-based indices");
                }
                const auto a = static_cast<Agent>(v.get<long long>() - 1);
                if (static_cast<std::size_t>(a) >= seen.size()) seen.resize(static_cast<std::size_t>(a) + 1, false);
                if (seen[a]) {
                    throw ParseError(ErrorCode::DuplicateEntry, 0,
                                     agent_name(side, static_cast<Agent>(i)) + " repeats an entry");
                }
                seen[a] = true;
                list.push_back(a);
            }
            lists.push_back(std::move(list));
        }
        return lists;
    };
    auto men = read_side(doc["men"], Side::Men);
    auto women = read_side(doc["women"], Side::Women);
    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer()) throw ParseError(ErrorCode::MalformedLine, 0, "\"n\" must be an integer");
        const auto n = doc["n"].get<long long>();
        if (static_cast<long long>(men.size()) != n || static_cast<long long>(women.size()) != n) {
            throw ParseError(ErrorCode::SizeMismatch, 0, "\"n\" disagrees with the number of lists");
        }
    }
    if (men.size() != women.size()) {
        throw ParseError(ErrorCode::SizeMismatch, 0, "men and women counts differ");
    }
    const auto n = men.size();
    for (const auto* table : {&men, &women}) {
        for (const auto& list : *table) {
            for (Agent a : list) {
                if (static_cast<std::size_t>(a) >= n) throw ParseError(ErrorCode::MalformedLine, 0, "entry outside 1..n");
            }
            if (list.size() < n) throw ParseError(ErrorCode::IncompleteList, 0, "a preference list is shorter than n");
        }
    }
    return PreferenceProfile::from_lists(men, women);
}

std::string to_text(const PreferenceProfile& profile) {
    std::ostringstream out;
    out << "n=" << profile.size() << "\n";
    for (Side side : {Side::Men, Side::Women}) {
        const Side other = side == Side::Men ? Side::Women : Side::Men;
        for (Agent a = 0; a < profile.size(); ++a) {
            out << agent_name(side, a) << ":";
            for (Agent b : profile.list(side, a)) out << ' ' << agent_name(other, b);
            out << "\n";
        }
    }
    return out.str();
}

std::string to_json(const PreferenceProfile& profile) {
    auto one_based = [](const std::vector<PreferenceList>& lists) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& list : lists) {
            nlohmann::json row = nlohmann::json::array();
            for (Agent a : list) row.push_back(a + 1);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    nlohmann::json doc;
    doc["n"] = profile.size();
    doc["men"] = one_based(profile.men_lists());
    doc["women"] = one_based(profile.women_lists());
    return doc.dump() + "\n";
}

}  // namespace accomplice
