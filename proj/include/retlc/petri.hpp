#pragma once

#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "retlc/action.hpp"
#include "retlc/errors.hpp"
#include "retlc/ltsc.hpp"
#include "retlc/multiset.hpp"

namespace retlc {

using Marking = Multiset<int>; // over place indices

struct NetTransition {
    std::string name;
    ActionLabel label;
    Marking pre;  // nonempty (every transition has a preplace)
    Marking post;
};

struct PetriNet {
    std::vector<std::string> places;
    std::vector<NetTransition> transitions;
    Marking initial;

    int place_index(const std::string& name) const {
        for (int i = 0; i < static_cast<int>(places.size()); ++i)
            if (places[i] == name) return i;
        return -1;
    }

    void check_well_formed() const {
        for (auto& t : transitions)
            if (t.pre.empty())
                throw Error("net transition '" + t.name + "' has an empty preset");
    }
};

inline std::string marking_to_string(const PetriNet& net, const Marking& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [p, k] : m.entries()) {
        if (!first) os << ",";
        first = false;
        os << net.places[p];
        if (k != 1) os << ":" << k;
    }
    os << "}";
    return os.str();
}

// Fires a finite nonempty multiset of transitions (a step) at marking m.
inline Marking fire_step(const PetriNet& net, const Marking& m, const Multiset<int>& step) {
    if (step.empty()) throw Error("fire_step: empty step");
    Marking pre, post;
    for (auto& [t, k] : step.entries()) {
        if (t < 0 || t >= static_cast<int>(net.transitions.size()))
            throw Error("fire_step: unknown transition index");
        pre = pre + k * net.transitions[t].pre;
        post = post + k * net.transitions[t].post;
    }
    if (!(pre <= m)) throw NotEnabled("step preset exceeds marking");
    return (m - pre) + post;
}

// ---------------------------------------------------------------------------
// Structural-conflict validation: explores markings reachable by single
// transitions and reports every reachable two-element step {t,u} (t = u
// allowed) whose members share a preplace.
// ---------------------------------------------------------------------------

struct ConflictViolation {
    Marking marking;
    int t, u;
};

struct ConflictValidation {
    std::vector<ConflictViolation> violations;
    std::size_t markings_explored = 0;
    bool ok() const { return violations.empty(); }
};

namespace detail {

// Breadth-first closure over single-transition steps, in transition order.
template <typename Visit>
void explore_markings(const PetriNet& net, std::size_t max_states, Visit&& visit) {
    std::map<Marking, int> index;
    std::vector<Marking> order;
    index[net.initial] = 0;
    order.push_back(net.initial);
    for (std::size_t head = 0; head < order.size(); ++head) {
        Marking m = order[head];
        visit(static_cast<int>(head), m);
        for (int t = 0; t < static_cast<int>(net.transitions.size()); ++t) {
            if (!(net.transitions[t].pre <= m)) continue;
            Marking next = (m - net.transitions[t].pre) + net.transitions[t].post;
            auto it = index.find(next);
            if (it == index.end()) {
                if (order.size() >= max_states) throw StateSpaceExceeded(max_states);
                int id = static_cast<int>(order.size());
                index.emplace(next, id);
                order.push_back(next);
            }
        }
    }
}

} // namespace detail

inline ConflictValidation validate_structural_conflict(const PetriNet& net,
                                                       std::size_t max_states = 100000) {
    net.check_well_formed();
    ConflictValidation report;
    int nt = static_cast<int>(net.transitions.size());
    detail::explore_markings(net, max_states, [&](int, const Marking& m) {
        ++report.markings_explored;
        for (int t = 0; t < nt; ++t) {
            for (int u = t; u < nt; ++u) {
                Marking need = net.transitions[t].pre + net.transitions[u].pre;
                if (!(need <= m)) continue;
                if (shares_element(net.transitions[t].pre, net.transitions[u].pre))
                    report.violations.push_back({m, t, u});
            }
        }
    });
    return report;
}

// ---------------------------------------------------------------------------
// Net -> LTSC: states are reachable markings, transitions are (marking, t)
// pairs, and two transitions are concurrent iff the underlying net
// transitions have disjoint presets. Requires a structural conflict net
// (validated on the fly).
// ---------------------------------------------------------------------------

struct NetExploration {
    Ltsc ltsc;
    std::vector<Marking> markings;      // state index -> marking
    std::vector<int> net_transition;    // ltsc transition -> net transition index
};

inline NetExploration explore_net(const PetriNet& net, std::size_t max_states = 100000) {
    net.check_well_formed();
    {
        ConflictValidation v = validate_structural_conflict(net, max_states);
        if (!v.ok()) {
            const ConflictViolation& first = v.violations.front();
            throw NotStructuralConflictNet(
                "step {" + net.transitions[first.t].name + "," + net.transitions[first.u].name +
                "} enabled at " + marking_to_string(net, first.marking) +
                " with a shared preplace");
        }
    }

    NetExploration res;
    std::map<Marking, int> index;
    index[net.initial] = 0;
    res.markings.push_back(net.initial);
    res.ltsc.states.push_back(marking_to_string(net, net.initial));
    res.ltsc.initial = 0;

    for (std::size_t head = 0; head < res.markings.size(); ++head) {
        Marking m = res.markings[head];
        for (int t = 0; t < static_cast<int>(net.transitions.size()); ++t) {
            if (!(net.transitions[t].pre <= m)) continue;
            Marking next = (m - net.transitions[t].pre) + net.transitions[t].post;
            auto it = index.find(next);
            int tgt;
            if (it == index.end()) {
                if (res.markings.size() >= max_states) throw StateSpaceExceeded(max_states);
                tgt = static_cast<int>(res.markings.size());
                index.emplace(next, tgt);
                res.markings.push_back(next);
                res.ltsc.states.push_back(marking_to_string(net, next));
            } else {
                tgt = it->second;
            }
            int id = static_cast<int>(res.ltsc.transitions.size());
            res.ltsc.transitions.push_back({id, static_cast<int>(head), tgt,
                                            net.transitions[t].label});
            res.net_transition.push_back(t);
        }
    }

    for (int a = 0; a < static_cast<int>(res.ltsc.transitions.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(res.ltsc.transitions.size()); ++b)
            if (!shares_element(net.transitions[res.net_transition[a]].pre,
                                net.transitions[res.net_transition[b]].pre))
                res.ltsc.concurrency_pairs.push_back({a, b});

    res.ltsc.finish();
    return res;
}

} // namespace retlc
