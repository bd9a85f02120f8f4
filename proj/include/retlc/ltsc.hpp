#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "retlc/action.hpp"
#include "retlc/errors.hpp"

namespace retlc {

struct Transition {
    int id;
    int source;
    int target;
    ActionLabel label;
};

// Labelled transition system with a symmetric concurrency relation over
// transitions. States and transitions carry dense indices; all relations are
// stored over those indices. Instances are immutable once finish() has run.
struct Ltsc {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<Transition> transitions;
    std::vector<std::pair<int, int>> concurrency_pairs; // unordered pairs, stored a<=b

    // derived by finish()
    std::vector<std::vector<int>> out;   // state -> outgoing transition ids (ascending)
    std::vector<std::vector<char>> conc; // symmetric adjacency over transitions

    int num_states() const { return static_cast<int>(states.size()); }
    int num_transitions() const { return static_cast<int>(transitions.size()); }

    void finish() {
        int ns = num_states(), nt = num_transitions();
        if (initial < 0 || initial >= ns) throw Error("initial state index out of range");
        out.assign(ns, {});
        for (int i = 0; i < nt; ++i) {
            const Transition& t = transitions[i];
            if (t.id != i) throw Error("transition ids must be dense and in order");
            if (t.source < 0 || t.source >= ns || t.target < 0 || t.target >= ns)
                throw Error("transition endpoint out of range");
            out[t.source].push_back(i);
        }
        conc.assign(nt, std::vector<char>(nt, 0));
        std::set<std::pair<int, int>> canon;
        for (auto& [a, b] : concurrency_pairs) {
            if (a < 0 || a >= nt || b < 0 || b >= nt)
                throw Error("concurrency pair references unknown transition");
            conc[a][b] = conc[b][a] = 1;
            canon.insert({std::min(a, b), std::max(a, b)});
        }
        concurrency_pairs.assign(canon.begin(), canon.end());
    }

    bool concurrent(int a, int b) const { return conc[a][b] != 0; }
    // "u interferes with t": t and u are not concurrent. Always true for u == t
    // on a well-formed (irreflexive) relation.
    bool interferes(int t, int u) const { return !conc[t][u]; }

    const std::string& state_name(int s) const { return states[s]; }
};

// Finite path: a start state plus adjacent transitions. The empty path
// (single state, no steps) is legal.
struct LtsPath {
    int start = 0;
    std::vector<int> steps;

    int end_state(const Ltsc& m) const {
        return steps.empty() ? start : m.transitions[steps.back()].target;
    }

    bool well_formed(const Ltsc& m) const {
        if (start < 0 || start >= m.num_states()) return false;
        int at = start;
        for (int t : steps) {
            if (t < 0 || t >= m.num_transitions()) return false;
            if (m.transitions[t].source != at) return false;
            at = m.transitions[t].target;
        }
        return true;
    }
};

// Finite representation of an ultimately periodic path: prefix followed by a
// repeated cycle. An empty cycle marks a plain finite path inside enumeration
// streams; everywhere else the cycle is nonempty.
struct Lasso {
    LtsPath prefix;
    std::vector<int> cycle;

    bool is_finite_path() const { return cycle.empty(); }

    bool well_formed(const Ltsc& m) const {
        if (!prefix.well_formed(m)) return false;
        int anchor = prefix.end_state(m);
        int at = anchor;
        for (int t : cycle) {
            if (t < 0 || t >= m.num_transitions()) return false;
            if (m.transitions[t].source != at) return false;
            at = m.transitions[t].target;
        }
        return cycle.empty() || at == anchor;
    }
};

// ---------------------------------------------------------------------------
// De Nicola & Vaandrager translation to a Kripke structure: a new state
// halfway along every visible transition carries that transition's label as
// its only atomic predicate; tau transitions become direct edges.
// ---------------------------------------------------------------------------

struct KripkeOrigin {
    bool is_transition = false;
    int index = 0; // LTS state or transition index
};

struct KripkeEdge {
    int from;
    int to;
    int taken; // LTS transition consumed by following this edge, -1 for none
};

struct KripkeStructure {
    int n_states = 0;
    std::vector<KripkeEdge> edges;
    std::vector<std::set<std::string>> labels;
    std::vector<KripkeOrigin> origin;

    int initial_pos = 0;
    std::vector<int> trans_pos; // LTS transition -> midpoint position, -1 for tau
    std::vector<std::vector<int>> out_edges; // position -> edge indices

    int state_pos(int lts_state) const { return lts_state; } // by construction
};

inline KripkeStructure dv_translate(const Ltsc& m) {
    KripkeStructure k;
    int ns = m.num_states();
    k.n_states = ns;
    k.labels.assign(ns, {});
    k.origin.resize(ns);
    for (int s = 0; s < ns; ++s) k.origin[s] = {false, s};
    k.trans_pos.assign(m.num_transitions(), -1);
    for (const Transition& t : m.transitions) {
        if (t.label.is_visible()) {
            int mid = k.n_states++;
            k.trans_pos[t.id] = mid;
            k.labels.push_back({t.label.name()});
            k.origin.push_back({true, t.id});
            k.edges.push_back({t.source, mid, t.id});
            k.edges.push_back({mid, t.target, -1});
        } else {
            k.edges.push_back({t.source, t.target, t.id});
        }
    }
    k.initial_pos = m.initial;
    k.out_edges.assign(k.n_states, {});
    for (int e = 0; e < static_cast<int>(k.edges.size()); ++e)
        k.out_edges[k.edges[e].from].push_back(e);
    return k;
}

// ---------------------------------------------------------------------------
// LTSC axiom validation: irreflexivity, and the closure axiom checked along
// all concurrent paths of bounded length. Violations are data, not errors.
// ---------------------------------------------------------------------------

struct LtscClosureViolation {
    int transition;
    LtsPath path;
};

struct LtscValidation {
    std::vector<int> reflexive;                 // transitions with (t,t) declared concurrent
    std::vector<LtscClosureViolation> closure;  // failures of the closure axiom up to the bound
    bool ok() const { return reflexive.empty() && closure.empty(); }
};

inline LtscValidation validate_ltsc(const Ltsc& m, int depth_bound = 3) {
    LtscValidation report;
    int nt = m.num_transitions();
    for (int t = 0; t < nt; ++t)
        if (m.conc[t][t]) report.reflexive.push_back(t);

    for (int t = 0; t < nt; ++t) {
        const Transition& tr = m.transitions[t];
        // DFS over paths from source(t) consisting only of transitions
        // concurrent with t.
        LtsPath path{tr.source, {}};
        std::function<void(int, int)> walk = [&](int at, int depth) {
            bool variant = false;
            for (int u : m.out[at]) {
                if (m.transitions[u].label == tr.label && m.interferes(t, u)) {
                    variant = true;
                    break;
                }
            }
            if (!variant) report.closure.push_back({t, path});
            if (depth == depth_bound) return;
            for (int v : m.out[at]) {
                if (!m.concurrent(t, v)) continue;
                path.steps.push_back(v);
                walk(m.transitions[v].target, depth + 1);
                path.steps.pop_back();
            }
        };
        walk(tr.source, 0);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Bounded lasso/finite-path enumeration from the initial state. Yields every
// finite path of length <= max_prefix (empty cycle) and every lasso whose
// prefix is such a path and whose cycle has length in [1, max_cycle], each
// exactly once, in a fixed depth-first order by transition id. The callback
// returns false to stop the stream.
// ---------------------------------------------------------------------------

inline void enumerate_lassos(const Ltsc& m, int max_prefix, int max_cycle,
                             const std::function<bool(const Lasso&)>& yield) {
    if (max_prefix < 0 || max_cycle < 1) throw Error("enumerate_lassos: bad bounds");
    Lasso cur;
    cur.prefix.start = m.initial;
    bool stop = false;

    std::function<void(int, int, int)> cycles = [&](int anchor, int at, int len) {
        if (stop) return;
        for (int t : m.out[at]) {
            if (stop) return;
            cur.cycle.push_back(t);
            int nxt = m.transitions[t].target;
            if (nxt == anchor && !yield(cur)) stop = true;
            if (!stop && len + 1 < max_cycle) cycles(anchor, nxt, len + 1);
            cur.cycle.pop_back();
        }
    };

    std::function<void(int, int)> prefixes = [&](int at, int len) {
        if (stop) return;
        if (!yield(cur)) { stop = true; return; } // finite path marker
        cycles(at, at, 0);
        if (stop || len == max_prefix) return;
        for (int t : m.out[at]) {
            if (stop) return;
            cur.prefix.steps.push_back(t);
            prefixes(m.transitions[t].target, len + 1);
            cur.prefix.steps.pop_back();
        }
    };

    prefixes(m.initial, 0);
}

// ---------------------------------------------------------------------------
// Word flattening: maps LTS paths/lassos to the atom words of the associated
// Kripke structure (state positions carry no atoms, visible transitions add a
// midpoint position labelled with the action name).
// ---------------------------------------------------------------------------

inline std::vector<std::set<std::string>> flatten_finite(const Ltsc& m, const LtsPath& p) {
    std::vector<std::set<std::string>> w;
    w.push_back({});
    for (int t : p.steps) {
        const Transition& tr = m.transitions[t];
        if (tr.label.is_visible()) w.push_back({tr.label.name()});
        w.push_back({});
    }
    return w;
}

// prefix word (positions before the cycle-start state) and cycle word
// (starting at the cycle-start state position).
inline std::pair<std::vector<std::set<std::string>>, std::vector<std::set<std::string>>>
flatten_lasso(const Ltsc& m, const Lasso& l) {
    std::vector<std::set<std::string>> pre, cyc;
    for (int t : l.prefix.steps) {
        const Transition& tr = m.transitions[t];
        pre.push_back({});
        if (tr.label.is_visible()) pre.push_back({tr.label.name()});
    }
    // adjust: the walk above emits the source position before each step
    // starting with the initial state, so nothing more to do for the prefix.
    for (std::size_t i = 0; i < l.cycle.size(); ++i) {
        const Transition& tr = m.transitions[l.cycle[i]];
        cyc.push_back({});
        if (tr.label.is_visible()) cyc.push_back({tr.label.name()});
    }
    return {pre, cyc};
}

} // namespace retlc
