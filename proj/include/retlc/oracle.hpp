#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "retlc/criteria.hpp"
#include "retlc/eval.hpp"
#include "retlc/formula.hpp"
#include "retlc/ltsc.hpp"

namespace retlc {

// ---------------------------------------------------------------------------
// Literal completeness predicates on explicit paths and lassos, written
// directly from the definitions (no obligation tracking, no product). These
// back the brute-force oracle and double as an independent re-check of every
// counterexample the main checker emits.
// ---------------------------------------------------------------------------

// Finite path: complete iff it ends in a B-deadlock state (under top, every
// path is complete).
inline bool finite_path_complete(const Ltsc& m, const BlockSet& b, const LtsPath& p,
                                 const CompletenessCriterion& cc) {
    if (cc.kind == CompletenessCriterion::Top) return true;
    int end = p.end_state(m);
    for (int t : m.out[end])
        if (!b.contains(m.transitions[t].label)) return false;
    return true;
}

namespace detail {

// B-justness of prefix.cycle^omega, quantifying over every occurrence of a
// state on the path: the suffix from that occurrence must contain an
// interfering transition. One cycle unfolding covers all cycle positions.
inline bool lasso_just(const Ltsc& m, const BlockSet& b, const Lasso& l) {
    std::set<int> cycle_set(l.cycle.begin(), l.cycle.end());
    auto suffix_discharges = [&](int t, std::size_t from_prefix_index) {
        for (std::size_t i = from_prefix_index; i < l.prefix.steps.size(); ++i)
            if (m.interferes(t, l.prefix.steps[i])) return true;
        for (int u : cycle_set)
            if (m.interferes(t, u)) return true;
        return false;
    };

    // occurrences in the prefix
    int at = l.prefix.start;
    for (std::size_t i = 0; i <= l.prefix.steps.size(); ++i) {
        for (int t : m.out[at]) {
            if (b.contains(m.transitions[t].label)) continue;
            if (!suffix_discharges(t, i)) return false;
        }
        if (i < l.prefix.steps.size()) at = m.transitions[l.prefix.steps[i]].target;
    }
    // occurrences around the cycle: the suffix from any cycle position
    // contains every cycle transition infinitely often
    for (int u : l.cycle) {
        int s = m.transitions[u].source;
        for (int t : m.out[s]) {
            if (b.contains(m.transitions[t].label)) continue;
            bool discharged = false;
            for (int v : cycle_set)
                if (m.interferes(t, v)) {
                    discharged = true;
                    break;
                }
            if (!discharged) return false;
        }
    }
    return true;
}

// Task fairness of prefix.cycle^omega per the definitions: a weakly fair path
// has no suffix on which a task is perpetually B-enabled yet never occurs; a
// strongly fair path has no suffix on which a task is relentlessly B-enabled
// yet never occurs.
inline bool lasso_fair(const Ltsc& m, const BlockSet& b, const TaskSet& tasks, const Lasso& l,
                       bool strong) {
    std::vector<int> cycle_states;
    for (int u : l.cycle) cycle_states.push_back(m.transitions[u].source);

    for (auto& task : tasks.tasks) {
        std::set<int> members(task.transitions.begin(), task.transitions.end());
        auto enabled_at = [&](int s) {
            for (int t : m.out[s])
                if (members.count(t) && !b.contains(m.transitions[t].label)) return true;
            return false;
        };
        bool occurs_in_cycle = false;
        for (int u : l.cycle)
            if (members.count(u)) occurs_in_cycle = true;
        if (occurs_in_cycle) continue; // occurs in every suffix

        bool enabled_somewhere_in_cycle = false, enabled_everywhere_in_cycle = true;
        for (int s : cycle_states) {
            if (enabled_at(s)) enabled_somewhere_in_cycle = true;
            else enabled_everywhere_in_cycle = false;
        }
        if (strong) {
            // The all-cycle suffix visits exactly the cycle states infinitely
            // often, so the task is relentlessly enabled on it iff some cycle
            // state enables it; it never occurs there. Suffixes starting in the
            // prefix contain arbitrarily late sub-suffixes that live entirely
            // in the cycle, so they add no further violations.
            if (enabled_somewhere_in_cycle) return false;
        } else {
            // Perpetual enabledness on any suffix requires enabledness at every
            // cycle state, since every suffix eventually visits all of them.
            if (enabled_everywhere_in_cycle) return false;
        }
    }
    return true;
}

} // namespace detail

// Completeness of the infinite path prefix.cycle^omega under (cc, B), by
// direct application of the definitions.
inline bool lasso_complete_per_definition(const Ltsc& m, const CompletenessCriterion& cc,
                                          const BlockSet& b, const Lasso& l) {
    switch (cc.kind) {
        case CompletenessCriterion::Top:
        case CompletenessCriterion::Progress: return true;
        case CompletenessCriterion::Justness: return detail::lasso_just(m, b, l);
        case CompletenessCriterion::WeakFairness:
            return detail::lasso_fair(m, b, cc.tasks, l, false);
        case CompletenessCriterion::StrongFairness:
            return detail::lasso_fair(m, b, cc.tasks, l, true);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: enumerate bounded finite paths and lassos, filter by
// completeness, evaluate the formula directly.
// ---------------------------------------------------------------------------

struct OracleResult {
    enum Outcome { HoldsWithinBound, Fails } outcome = HoldsWithinBound;
    std::optional<Lasso> witness; // empty cycle = finite path witness
    std::size_t candidates = 0;
    std::size_t complete_paths = 0;

    bool fails() const { return outcome == Fails; }
};

inline OracleResult oracle_check(const Ltsc& m, const LtlPtr& phi, const CompletenessCriterion& cc,
                                 const BlockSet& b, int prefix_bound, int cycle_bound) {
    OracleResult res;
    enumerate_lassos(m, prefix_bound, cycle_bound, [&](const Lasso& l) {
        ++res.candidates;
        if (l.is_finite_path()) {
            if (!finite_path_complete(m, b, l.prefix, cc)) return true;
            ++res.complete_paths;
            if (!eval_ltl_finite(flatten_finite(m, l.prefix), phi)) {
                res.outcome = OracleResult::Fails;
                res.witness = l;
                return false;
            }
        } else {
            if (!lasso_complete_per_definition(m, cc, b, l)) return true;
            ++res.complete_paths;
            auto [pre, cyc] = flatten_lasso(m, l);
            if (!eval_ltl_lasso(pre, cyc, phi)) {
                res.outcome = OracleResult::Fails;
                res.witness = l;
                return false;
            }
        }
        return true;
    });
    return res;
}

} // namespace retlc
