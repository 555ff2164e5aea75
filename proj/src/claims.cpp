#include "accomplice/claims.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "accomplice/deferred_acceptance.hpp"
#include "accomplice/error.hpp"
#include "accomplice/manipulation.hpp"
#include "accomplice/oracle.hpp"
#include "accomplice/random.hpp"
#include "accomplice/stability.hpp"

namespace accomplice::oracle {

namespace {

struct ClaimInfo {
    Claim claim;
    std::string_view name;
    std::string_view short_alias;
    int max_n;
};

constexpr int kUnbounded = 1 << 16;

const std::array<ClaimInfo, 21>& claim_table() {
    static const std::array<ClaimInfo, 21> table{{
        {Claim::StableSetContainment, "stable-set-containment", "thm-4-1", kDefaultEnumerationCap},
        {Claim::NoRegretMonotonicity, "no-regret-monotonicity", "cor-4-2", kUnbounded},
        {Claim::NoRegretInconspicuous, "no-regret-inconspicuous", "thm-4-5", kMaxExhaustiveN},
        {Claim::WithRegretInconspicuous, "with-regret-inconspicuous", "thm-4-9", kMaxExhaustiveN},
        {Claim::BeneficialInconspicuous, "beneficial-inconspicuous", "thm-d-3", kMaxExhaustiveN},
        {Claim::StrictPushUp, "strict-push-up", "prop-c-1", kUnbounded},
        {Claim::WeakPushUp, "weak-push-up", "lemma-c-2", kUnbounded},
        {Claim::RegretMatchInPushedSet, "regret-match-in-pushed-set", "lemma-b-2", kUnbounded},
        {Claim::NoRegretProposalCover, "no-regret-proposal-cover", "lemma-b-3", kUnbounded},
        {Claim::WithRegretProposalCover, "with-regret-proposal-cover", "lemma-b-8", kUnbounded},
        {Claim::PushUpProposalSuperset, "push-up-proposal-superset", "lemma-c-push-up-proposals",
         kUnbounded},
        {Claim::LatticeClosure, "lattice-closure", "prop-a-1", kDefaultEnumerationCap},
        {Claim::MenOptimality, "men-optimality", "prop-3-1", kDefaultEnumerationCap},
        {Claim::MStability, "m-stability", "prop-3-2", kDefaultEnumerationCap},
        {Claim::PermutationInvariance, "permutation-invariance", "prop-3-3", kUnbounded},
        {Claim::PushDownMen, "push-down-men", "prop-3-4", kUnbounded},
        {Claim::PushDownWomen, "push-down-women", "lemma-3-5", kUnbounded},
        {Claim::CombiningPushUpPushDown, "combining-push-up-push-down", "lemma-4-3", kUnbounded},
        {Claim::NoRegretStability, "no-regret-stability", "cor-4-7", kUnbounded},
        {Claim::MenStrategyproofness, "men-strategyproofness", "strategyproofness-men",
         kMaxExhaustiveN},
        {Claim::SelfInconspicuous, "self-inconspicuous", "self-inconspicuous-exhaustive",
         kMaxExhaustiveN},
    }};
    return table;
}

const ClaimInfo& info(Claim claim) {
    for (const auto& entry : claim_table()) {
        if (entry.claim == claim) return entry;
    }
    throw Error(ErrorCode::UnknownClaim, "unregistered claim");
}

// ---------------------------------------------------------------------------
// Trial plumbing

enum class Status { Pass, Fail, Vacuous };

struct TrialOutcome {
    Status status = Status::Pass;
    Counterexample cx;
};

TrialOutcome pass() { return {}; }
TrialOutcome vacuous() { return {Status::Vacuous, {}}; }

TrialOutcome fail(const PreferenceProfile& profile, std::string details, std::optional<Agent> agent = std::nullopt,
                  PreferenceList misreport = {}, std::vector<std::pair<std::string, Matching>> matchings = {},
                  Side side = Side::Men) {
    TrialOutcome out{Status::Fail, {}};
    out.cx.profile = profile;
    out.cx.agent_side = side;
    out.cx.agent = agent;
    out.cx.misreport = std::move(misreport);
    out.cx.details = std::move(details);
    out.cx.matchings = std::move(matchings);
    return out;
}

PreferenceList random_subset(std::span<const Agent> pool, Random& rng, std::size_t min_size) {
    if (pool.size() < min_size) return {};
    for (;;) {
        PreferenceList out;
        for (Agent a : pool) {
            if (rng.coin()) out.push_back(a);
        }
        if (out.size() >= min_size) return out;
    }
}

Placement random_placement(Random& rng) {
    return rng.coin() ? Placement::FrontOfAbove : Placement::ImmediatelyAbovePivot;
}

bool contains(std::span<const Agent> set, Agent a) { return std::find(set.begin(), set.end(), a) != set.end(); }

Matching da_with(const PreferenceProfile& profile, Agent m, std::span<const Agent> list) {
    const ListOverride override{Side::Men, m, list};
    return da_matching(profile, &override);
}

// Shared setup for the push-up claims: random man, random nonempty subset of
// the women below his partner, pushed up with the requested placement.
struct PushUp {
    Agent m = 0;
    Matching truthful;
    SplitPreference split;
    PreferenceList promoted;
    PreferenceList list;
    Matching outcome;
    bool regret = false;
};

std::optional<PushUp> random_push_up(const PreferenceProfile& profile, Random& rng, Placement placement,
                                     std::size_t min_size = 1) {
    PushUp pu;
    pu.m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(profile.size())));
    pu.truthful = da_matching(profile);
    pu.split = split_at(profile, pu.m, pu.truthful.woman_of(pu.m));
    pu.promoted = random_subset(pu.split.below, rng, min_size);
    if (pu.promoted.empty()) return std::nullopt;
    pu.list = push_up(pu.split, pu.promoted, placement);
    pu.outcome = da_with(profile, pu.m, pu.list);
    pu.regret = pu.outcome.woman_of(pu.m) != pu.truthful.woman_of(pu.m);
    return pu;
}

std::string names(Side side, std::span<const Agent> agents) {
    std::string out = "{";
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (i) out += ",";
        out += agent_name(side, agents[i]);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Individual claims

TrialOutcome check_stable_set_containment(const PreferenceProfile& p, Random& rng) {
    auto pu = random_push_up(p, rng, random_placement(rng));
    if (!pu || pu->regret) return vacuous();
    const auto before = enumerate_stable(p);
    const auto after = enumerate_stable(p.with_man_list(pu->m, pu->list));
    if (after.subset_of(before)) return pass();
    for (const auto& mu : after) {
        if (!before.contains(mu)) {
            return fail(p, "stable matching of the manipulated profile is unstable for the truth", pu->m, pu->list,
                        {{"escaping", mu}});
        }
    }
    return fail(p, "containment failed", pu->m, pu->list);
}

TrialOutcome check_no_regret_monotonicity(const PreferenceProfile& p, Random& rng) {
    auto pu = random_push_up(p, rng, random_placement(rng));
    if (!pu || pu->regret) return vacuous();
    if (women_weakly_prefer(p, pu->outcome, pu->truthful) && men_weakly_prefer(p, pu->truthful, pu->outcome)) {
        return pass();
    }
    return fail(p, "no-regret push up is not weakly better for all women and worse for all men", pu->m, pu->list,
                {{"truthful", pu->truthful}, {"manipulated", pu->outcome}});
}

TrialOutcome check_solver_vs_exhaustive(const PreferenceProfile& p, AccompliceMode mode) {
    const int n = p.size();
    const Mode oracle_mode = mode == AccompliceMode::NoRegret ? Mode::NoRegret : Mode::WithRegret;
    for (Agent m = 0; m < n; ++m) {
        for (Agent w = 0; w < n; ++w) {
            const auto solved = optimal_accomplice(p, m, w, mode);
            const auto brute = exhaustive_best_manipulation(p, Side::Men, m, w, oracle_mode);
            if (solved.outcome.man_of(w) != brute.best_partner) {
                return fail(p,
                            "pair (" + agent_name(Side::Men, m) + "," + agent_name(Side::Women, w) +
                                "): single promotion reaches " + agent_name(Side::Men, solved.outcome.man_of(w)) +
                                ", exhaustive search reaches " + agent_name(Side::Men, brute.best_partner),
                            m, brute.witness, {{"solver", solved.outcome}});
            }
        }
    }
    return pass();
}

TrialOutcome check_beneficial_inconspicuous(const PreferenceProfile& p, Random&) {
    const int n = p.size();
    const Matching truthful = run_da(p).matching;
    for (Agent m = 0; m < n; ++m) {
        // reach[w] bit k: w can be matched to man k; strict improvements only.
        std::vector<std::uint32_t> any_all(n, 0), any_nr(n, 0), one_all(n, 0), one_nr(n, 0);
        std::vector<PreferenceList> witness(static_cast<std::size_t>(n) * n);
        auto record = [&](const Matching& outcome, std::vector<std::uint32_t>& all,
                          std::vector<std::uint32_t>& nr, std::span<const Agent> list) {
            const bool no_regret = outcome.woman_of(m) == truthful.woman_of(m);
            for (Agent w = 0; w < n; ++w) {
                const Agent partner = outcome.man_of(w);
                if (!p.woman_prefers(w, partner, truthful.man_of(w))) continue;
                all[w] |= 1u << partner;
                if (no_regret) nr[w] |= 1u << partner;
                auto& slot = witness[static_cast<std::size_t>(w) * n + partner];
                if (slot.empty()) slot.assign(list.begin(), list.end());
            }
        };
        for_each_misreport(p, Side::Men, m, [&](std::span<const Agent> list, const Matching& outcome) {
            record(outcome, any_all, any_nr, list);
        });
        for (const auto& candidate : accomplice_candidates(p, m, truthful)) {
            record(da_with(p, m, candidate.list), one_all, one_nr, candidate.list);
        }
        for (Agent w = 0; w < n; ++w) {
            const std::uint32_t missing_all = any_all[w] & ~one_all[w];
            const std::uint32_t missing_nr = any_nr[w] & ~one_nr[w];
            if (missing_all == 0 && missing_nr == 0) continue;
            const std::uint32_t missing = missing_all ? missing_all : missing_nr;
            Agent partner = 0;
            while (!(missing & (1u << partner))) ++partner;
            return fail(p,
                        std::string(missing_all ? "" : "no-regret ") + "partner " +
                            agent_name(Side::Men, partner) + " of " + agent_name(Side::Women, w) +
                            " is reachable by some misreport of " + agent_name(Side::Men, m) +
                            " but by no single promotion",
                        m, witness[static_cast<std::size_t>(w) * n + partner]);
        }
    }
    return pass();
}

// Rarely does a random push up change the outcome, so every man tries a
// random subset plus each single woman below his partner.
TrialOutcome check_strict_push_up(const PreferenceProfile& p, Random& rng) {
    const Matching truthful = da_matching(p);
    bool any = false;
    for (Agent m = 0; m < p.size(); ++m) {
        const auto split = split_at(p, m, truthful.woman_of(m));
        std::vector<PreferenceList> sets;
        if (auto subset = random_subset(split.below, rng, 1); !subset.empty()) sets.push_back(std::move(subset));
        for (Agent x : split.below) sets.push_back({x});
        for (const auto& promoted : sets) {
            const auto list = push_up(split, promoted, random_placement(rng));
            const Matching outcome = da_with(p, m, list);
            if (outcome.woman_of(m) != truthful.woman_of(m) || outcome == truthful) continue;
            any = true;
            int women_up = 0, men_down = 0;
            for (Agent a = 0; a < p.size(); ++a) {
                if (p.woman_prefers(a, outcome.man_of(a), truthful.man_of(a))) ++women_up;
                if (p.man_prefers(a, truthful.woman_of(a), outcome.woman_of(a))) ++men_down;
            }
            if (women_up < 2 || men_down < 2) {
                return fail(p,
                            "changed no-regret outcome with " + std::to_string(women_up) + " improving women and " +
                                std::to_string(men_down) + " worse-off men",
                            m, list, {{"truthful", truthful}, {"manipulated", outcome}});
            }
        }
    }
    return any ? pass() : vacuous();
}

TrialOutcome check_weak_push_up(const PreferenceProfile& p, Random& rng) {
    const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(p.size())));
    const Matching truthful = da_matching(p);
    const auto split = split_at(p, m, truthful.woman_of(m));
    PreferenceList eligible;
    for (Agent x : split.below) {
        if (p.woman_prefers(x, truthful.man_of(x), m)) eligible.push_back(x);
    }
    const auto promoted = random_subset(eligible, rng, 1);
    if (promoted.empty()) return vacuous();
    const auto list = push_up(split, promoted, random_placement(rng));
    const Matching outcome = da_with(p, m, list);
    if (outcome.woman_of(m) != truthful.woman_of(m)) return vacuous();
    if (outcome == truthful) return pass();
    return fail(p, "pushing up " + names(Side::Women, promoted) + " changed the matching", m, list,
                {{"truthful", truthful}, {"manipulated", outcome}});
}

TrialOutcome check_regret_match(const PreferenceProfile& p, Random& rng) {
    auto pu = random_push_up(p, rng, random_placement(rng));
    if (!pu || !pu->regret) return vacuous();
    if (contains(pu->promoted, pu->outcome.woman_of(pu->m))) return pass();
    return fail(p,
                "accomplice regrets with partner " + agent_name(Side::Women, pu->outcome.woman_of(pu->m)) +
                    " outside the pushed set " + names(Side::Women, pu->promoted),
                pu->m, pu->list, {{"manipulated", pu->outcome}});
}

TrialOutcome check_proposal_cover(const PreferenceProfile& p, Random& rng, bool want_regret) {
    auto pu = random_push_up(p, rng, Placement::ImmediatelyAbovePivot, 2);
    if (!pu || pu->regret != want_regret) return vacuous();
    const ListOverride whole{Side::Men, pu->m, pu->list};
    const auto combined = da_traced(p, &whole).trace.as_set();
    std::vector<Proposal> covered;
    for (Agent x : pu->promoted) {
        const Agent single[] = {x};
        const auto list = push_up(pu->split, single, Placement::ImmediatelyAbovePivot);
        const ListOverride one{Side::Men, pu->m, list};
        const auto props = da_traced(p, &one).trace.as_set();
        covered.insert(covered.end(), props.begin(), props.end());
    }
    std::sort(covered.begin(), covered.end());
    for (const auto& prop : combined) {
        if (!std::binary_search(covered.begin(), covered.end(), prop)) {
            return fail(p,
                        "proposal (" + agent_name(Side::Men, prop.man) + "," + agent_name(Side::Women, prop.woman) +
                            ") under the joint push up of " + names(Side::Women, pu->promoted) +
                            " occurs under no single push up",
                        pu->m, pu->list, {{"manipulated", pu->outcome}});
        }
    }
    return pass();
}

TrialOutcome check_proposal_superset(const PreferenceProfile& p, Random& rng) {
    auto pu = random_push_up(p, rng, random_placement(rng));
    if (!pu || pu->regret) return vacuous();
    const auto before = run_da(p).trace.as_set();
    const ListOverride override{Side::Men, pu->m, pu->list};
    const auto after = da_traced(p, &override).trace.as_set();
    if (std::includes(after.begin(), after.end(), before.begin(), before.end())) return pass();
    return fail(p, "a truthful proposal disappears after a no-regret push up", pu->m, pu->list);
}

TrialOutcome check_lattice_closure(const PreferenceProfile& p, Random&) {
    const auto stable = enumerate_stable(p);
    for (const auto& a : stable) {
        for (const auto& b : stable) {
            try {
                const Matching lo = meet(a, b, p);
                const Matching hi = join(a, b, p);
                if (!stable.contains(lo) || !stable.contains(hi)) {
                    return fail(p, "meet or join left the stable set", std::nullopt, {},
                                {{"first", a}, {"second", b}, {"meet", lo}, {"join", hi}});
                }
            } catch (const Error& e) {
                return fail(p, e.what(), std::nullopt, {}, {{"first", a}, {"second", b}});
            }
        }
    }
    return pass();
}

TrialOutcome check_men_optimality(const PreferenceProfile& p, Random&) {
    const auto stable = enumerate_stable(p);
    const Matching men_best = run_da(p).matching;
    const Matching women_best = run_da_women_proposing(p);
    if (!stable.contains(men_best) || !stable.contains(women_best)) {
        return fail(p, "a DA outcome is missing from the stable set", std::nullopt, {},
                    {{"men-proposing", men_best}, {"women-proposing", women_best}});
    }
    for (const auto& mu : stable) {
        if (!men_weakly_prefer(p, men_best, mu) || !women_weakly_prefer(p, mu, men_best) ||
            !women_weakly_prefer(p, women_best, mu) || !men_weakly_prefer(p, mu, women_best)) {
            return fail(p, "DA outcome is not extremal in the stable lattice", std::nullopt, {},
                        {{"men-proposing", men_best}, {"women-proposing", women_best}, {"other", mu}});
        }
    }
    return pass();
}

TrialOutcome check_m_stability(const PreferenceProfile& p, Random& rng) {
    const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(p.size())));
    const auto list = random_permutation(p.size(), rng);
    for (const auto& mu : enumerate_stable(p.with_man_list(m, list))) {
        if (!is_m_stable(mu, p, m)) {
            return fail(p, "a matching stable for the misreport has a blocking pair without the misreporter", m,
                        list, {{"matching", mu}});
        }
    }
    return pass();
}

TrialOutcome check_permutation_invariance(const PreferenceProfile& p, Random& rng) {
    const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(p.size())));
    const Matching truthful = da_matching(p);
    auto split = split_at(p, m, truthful.woman_of(m));
    rng.shuffle(std::span<Agent>(split.above));
    rng.shuffle(std::span<Agent>(split.below));
    const auto list = split.joined();
    const Matching outcome = da_with(p, m, list);
    if (outcome == truthful) return pass();
    return fail(p, "permuting the parts around the DA partner changed the outcome", m, list,
                {{"truthful", truthful}, {"permuted", outcome}});
}

TrialOutcome check_push_down(const PreferenceProfile& p, Random& rng, bool women_side) {
    const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(p.size())));
    const Matching truthful = da_matching(p);
    const auto split = split_at(p, m, truthful.woman_of(m));
    const auto demoted = random_subset(split.above, rng, 1);
    if (demoted.empty()) return vacuous();
    const auto list = push_down(split, demoted);
    const Matching outcome = da_with(p, m, list);
    const std::vector<std::pair<std::string, Matching>> shown{{"truthful", truthful}, {"pushed-down", outcome}};
    if (women_side) {
        if (women_weakly_prefer(p, truthful, outcome)) return pass();
        return fail(p, "push down improved some woman", m, list, shown);
    }
    if (outcome.woman_of(m) != truthful.woman_of(m)) return fail(p, "push down changed the accomplice's partner", m, list, shown);
    if (!men_weakly_prefer(p, outcome, truthful)) return fail(p, "push down hurt some man", m, list, shown);
    return pass();
}

TrialOutcome check_combining(const PreferenceProfile& p, Random& rng) {
    const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(p.size())));
    const Matching truthful = da_matching(p);
    const auto split = split_at(p, m, truthful.woman_of(m));
    const auto promoted = random_subset(split.below, rng, 0);
    const auto demoted = random_subset(split.above, rng, 0);
    if (promoted.empty() && demoted.empty()) return vacuous();
    const auto up = push_up(split, promoted);
    const auto both = push_up_down(split, promoted, demoted);
    const Matching only_up = da_with(p, m, up);
    const Matching combined = da_with(p, m, both);
    bool any = false;
    for (Agent w = 0; w < p.size(); ++w) {
        if (!p.woman_prefers(w, combined.man_of(w), truthful.man_of(w))) continue;
        any = true;
        if (combined.man_of(w) != only_up.man_of(w)) {
            return fail(p,
                        agent_name(Side::Women, w) + " benefits from X-up/Y-down with " +
                            agent_name(Side::Men, combined.man_of(w)) + " but X-up alone gives " +
                            agent_name(Side::Men, only_up.man_of(w)) + "; X=" + names(Side::Women, promoted) +
                            " Y=" + names(Side::Women, demoted),
                        m, both, {{"push-up", only_up}, {"combined", combined}});
        }
    }
    return any ? pass() : vacuous();
}

TrialOutcome check_no_regret_stability(const PreferenceProfile& p, Random& rng) {
    const Agent m = static_cast<Agent>(rng.below(static_cast<std::uint64_t>(p.size())));
    const Matching truthful = da_matching(p);
    bool any = false;
    for (const auto& candidate : accomplice_candidates(p, m, truthful)) {
        const Matching outcome = da_with(p, m, candidate.list);
        if (outcome.woman_of(m) != truthful.woman_of(m)) continue;
        any = true;
        if (!is_stable(outcome, p)) {
            return fail(p, "no-regret single promotion is unstable for the truth", m, candidate.list,
                        {{"manipulated", outcome}});
        }
    }
    return any ? pass() : vacuous();
}

TrialOutcome check_strategyproofness(const PreferenceProfile& p, Random&) {
    const Matching truthful = run_da(p).matching;
    for (Agent m = 0; m < p.size(); ++m) {
        std::optional<TrialOutcome> bad;
        for_each_misreport(p, Side::Men, m, [&](std::span<const Agent> list, const Matching& outcome) {
            if (!bad && p.man_prefers(m, outcome.woman_of(m), truthful.woman_of(m))) {
                bad = fail(p, "misreport improves the man", m, PreferenceList(list.begin(), list.end()),
                           {{"truthful", truthful}, {"manipulated", outcome}});
            }
        });
        if (bad) return *bad;
    }
    return pass();
}

TrialOutcome check_self_inconspicuous(const PreferenceProfile& p, Random&) {
    for (Agent w = 0; w < p.size(); ++w) {
        const auto solved = optimal_self(p, w);
        const auto brute = exhaustive_best_manipulation(p, Side::Women, w, w, Mode::SelfManipulation);
        if (solved.outcome.man_of(w) != brute.best_partner) {
            return fail(p,
                        agent_name(Side::Women, w) + ": single promotion reaches " +
                            agent_name(Side::Men, solved.outcome.man_of(w)) + ", exhaustive search reaches " +
                            agent_name(Side::Men, brute.best_partner),
                        w, brute.witness, {{"solver", solved.outcome}}, Side::Women);
        }
    }
    return pass();
}

TrialOutcome run_check(Claim claim, const PreferenceProfile& p, Random& rng) {
    switch (claim) {
        case Claim::StableSetContainment: return check_stable_set_containment(p, rng);
        case Claim::NoRegretMonotonicity: return check_no_regret_monotonicity(p, rng);
        case Claim::NoRegretInconspicuous: return check_solver_vs_exhaustive(p, AccompliceMode::NoRegret);
        case Claim::WithRegretInconspicuous: return check_solver_vs_exhaustive(p, AccompliceMode::WithRegret);
        case Claim::BeneficialInconspicuous: return check_beneficial_inconspicuous(p, rng);
        case Claim::StrictPushUp: return check_strict_push_up(p, rng);
        case Claim::WeakPushUp: return check_weak_push_up(p, rng);
        case Claim::RegretMatchInPushedSet: return check_regret_match(p, rng);
        case Claim::NoRegretProposalCover: return check_proposal_cover(p, rng, false);
        case Claim::WithRegretProposalCover: return check_proposal_cover(p, rng, true);
        case Claim::PushUpProposalSuperset: return check_proposal_superset(p, rng);
        case Claim::LatticeClosure: return check_lattice_closure(p, rng);
        case Claim::MenOptimality: return check_men_optimality(p, rng);
        case Claim::MStability: return check_m_stability(p, rng);
        case Claim::PermutationInvariance: return check_permutation_invariance(p, rng);
        case Claim::PushDownMen: return check_push_down(p, rng, false);
        case Claim::PushDownWomen: return check_push_down(p, rng, true);
        case Claim::CombiningPushUpPushDown: return check_combining(p, rng);
        case Claim::NoRegretStability: return check_no_regret_stability(p, rng);
        case Claim::MenStrategyproofness: return check_strategyproofness(p, rng);
        case Claim::SelfInconspicuous: return check_self_inconspicuous(p, rng);
    }
    throw Error(ErrorCode::UnknownClaim, "unhandled claim");
}

void record(OracleReport& report, TrialOutcome outcome, std::size_t trial, std::uint64_t trial_seed) {
    ++report.trials;
    if (outcome.status == Status::Vacuous) ++report.vacuous;
    if (outcome.status != Status::Fail) return;
    ++report.failures;
    if (!report.first_counterexample) {
        outcome.cx.trial = trial;
        outcome.cx.trial_seed = trial_seed;
        report.first_counterexample = std::move(outcome.cx);
    }
}

// Calls visit(profile) for every profile of size n: all (n!)^(2n) choices.
void for_each_profile(int n, const std::function<void(const PreferenceProfile&)>& visit) {
    PreferenceList base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    std::vector<PreferenceList> perms;
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    const std::size_t lists = 2 * static_cast<std::size_t>(n);
    std::vector<std::size_t> digit(lists, 0);
    for (;;) {
        std::vector<PreferenceList> men, women;
        for (std::size_t i = 0; i < lists; ++i) (i < static_cast<std::size_t>(n) ? men : women).push_back(perms[digit[i]]);
        visit(PreferenceProfile::from_lists(men, women));
        std::size_t i = 0;
        while (i < lists && ++digit[i] == perms.size()) digit[i++] = 0;
        if (i == lists) break;
    }
}

}  // namespace

const std::vector<Claim>& all_claims() {
    static const std::vector<Claim> claims = [] {
        std::vector<Claim> out;
        for (const auto& entry : claim_table()) out.push_back(entry.claim);
        return out;
    }();
    return claims;
}

std::string_view claim_name(Claim claim) { return info(claim).name; }

const std::vector<std::pair<std::string_view, Claim>>& claim_aliases() {
    static const std::vector<std::pair<std::string_view, Claim>> aliases = [] {
        std::vector<std::pair<std::string_view, Claim>> out;
        for (const auto& entry : claim_table()) {
            out.emplace_back(entry.short_alias, entry.claim);
        }
        return out;
    }();
    return aliases;
}

Claim parse_claim(std::string_view text) {
    for (const auto& entry : claim_table()) {
        if (text == entry.name || text == entry.short_alias) return entry.claim;
    }
    throw Error(ErrorCode::UnknownClaim, "unknown claim '" + std::string(text) + "'");
}

int claim_max_n(Claim claim) { return info(claim).max_n; }

OracleReport verify_claim(Claim claim, std::size_t trials, const VerifyOptions& options) {
    if (options.n_min < 1 || options.n_max < options.n_min) {
        throw Error(ErrorCode::ConfigInvalid, "invalid n range");
    }
    if (options.n_max > claim_max_n(claim)) {
        throw Error(ErrorCode::InstanceTooLarge, std::string(claim_name(claim)) + " supports n <= " +
                                                     std::to_string(claim_max_n(claim)));
    }
    OracleReport report;
    report.claim = claim;
    const std::uint64_t claim_seed = mix_seed(options.seed, static_cast<std::uint64_t>(claim));

    if (options.exhaustive_profiles) {
        if (options.n_max > 3) throw Error(ErrorCode::ConfigInvalid, "exhaustive profile enumeration needs n <= 3");
        std::size_t index = 0;
        for (int n = options.n_min; n <= options.n_max; ++n) {
            for_each_profile(n, [&](const PreferenceProfile& p) {
                const std::uint64_t trial_seed = mix_seed(claim_seed, index);
                Random rng(trial_seed);
                record(report, run_check(claim, p, rng), index, trial_seed);
                ++index;
            });
        }
        report.configuration = "exhaustive profile space, n=" + std::to_string(options.n_min) + ".." +
                               std::to_string(options.n_max) + ", seed=" + std::to_string(options.seed);
        return report;
    }

    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix_seed(claim_seed, t);
        Random rng(trial_seed);
        const int n = static_cast<int>(rng.between(options.n_min, options.n_max));
        const PreferenceProfile p = random_profile(n, rng);
        record(report, run_check(claim, p, rng), t, trial_seed);
    }
    report.configuration = "sampled " + std::to_string(trials) + " uniform profiles, n=" +
                           std::to_string(options.n_min) + ".." + std::to_string(options.n_max) +
                           ", seed=" + std::to_string(options.seed) + ", rng=" + std::string(kRngAlgorithm);
    return report;
}

std::string counterexample_profile_text(const Counterexample& cx) { return to_text(cx.profile); }

std::string counterexample_sidecar_json(const OracleReport& report) {
    nlohmann::json doc;
    doc["claim"] = std::string(claim_name(report.claim));
    doc["trials"] = report.trials;
    doc["failures"] = report.failures;
    doc["vacuous"] = report.vacuous;
    doc["configuration"] = report.configuration;
    if (report.first_counterexample) {
        const auto& cx = *report.first_counterexample;
        nlohmann::json c;
        c["trial"] = cx.trial;
        c["trial_seed"] = cx.trial_seed;
        if (cx.agent) c["agent"] = agent_name(cx.agent_side, *cx.agent);
        const Side listed = cx.agent_side == Side::Men ? Side::Women : Side::Men;
        nlohmann::json misreport = nlohmann::json::array();
        for (Agent a : cx.misreport) misreport.push_back(agent_name(listed, a));
        c["misreport"] = misreport;
        c["details"] = cx.details;
        nlohmann::json matchings = nlohmann::json::object();
        for (const auto& [label, mu] : cx.matchings) {
            nlohmann::json row = nlohmann::json::array();
            for (Agent m = 0; m < mu.size(); ++m) row.push_back(agent_name(Side::Women, mu.woman_of(m)));
            matchings[label] = row;
        }
        c["matchings"] = matchings;
        doc["counterexample"] = c;
    }
    return doc.dump(2) + "\n";
}

}  // namespace accomplice::oracle
