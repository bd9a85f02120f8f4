#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "retlc/action.hpp"
#include "retlc/errors.hpp"
#include "retlc/ltsc.hpp"

namespace retlc {

// Visible actions the environment may refuse to synchronise on. tau is never
// blockable.
class BlockSet {
public:
    BlockSet() = default;

    explicit BlockSet(std::set<std::string> names) {
        for (auto& n : names) insert(n);
    }

    void insert(const std::string& name) {
        if (name == "tau" || name.empty())
            throw Error("the hidden action may never be blocked");
        names_.insert(name);
    }

    bool contains(const ActionLabel& l) const {
        return l.is_visible() && names_.count(l.name()) > 0;
    }

    bool empty() const { return names_.empty(); }
    const std::set<std::string>& names() const { return names_; }

private:
    std::set<std::string> names_;
};

// Named tasks, each a set of transition ids of one specific Ltsc.
struct TaskSet {
    struct Task {
        std::string name;
        std::vector<int> transitions; // ascending
    };
    std::vector<Task> tasks;

    void validate_for(const Ltsc& m) const {
        for (auto& t : tasks)
            for (int id : t.transitions)
                if (id < 0 || id >= m.num_transitions())
                    throw TaskSetMismatch("task '" + t.name + "' references transition " +
                                          std::to_string(id));
    }
};

// One task per visible label: all transitions bearing that label. No tau task.
inline TaskSet tasks_by_label(const Ltsc& m) {
    std::map<std::string, std::vector<int>> by_label;
    for (const Transition& t : m.transitions)
        if (t.label.is_visible()) by_label[t.label.name()].push_back(t.id);
    TaskSet ts;
    for (auto& [name, ids] : by_label) ts.tasks.push_back({name, ids});
    return ts;
}

struct CompletenessCriterion {
    enum Kind { Top, Progress, Justness, WeakFairness, StrongFairness } kind = Progress;
    TaskSet tasks; // WeakFairness / StrongFairness only

    static CompletenessCriterion top() { return {Top, {}}; }
    static CompletenessCriterion progress() { return {Progress, {}}; }
    static CompletenessCriterion justness() { return {Justness, {}}; }
    static CompletenessCriterion weak_fairness(TaskSet t) { return {WeakFairness, std::move(t)}; }
    static CompletenessCriterion strong_fairness(TaskSet t) { return {StrongFairness, std::move(t)}; }

    bool task_based() const { return kind == WeakFairness || kind == StrongFairness; }

    const char* name() const {
        switch (kind) {
            case Top: return "top";
            case Progress: return "progress";
            case Justness: return "justness";
            case WeakFairness: return "wf";
            case StrongFairness: return "sf";
        }
        return "?";
    }
};

// States whose outgoing transitions (if any) all carry a label from B. A
// finite path ending in such a state is complete.
inline std::set<int> b_deadlock_states(const Ltsc& m, const BlockSet& b) {
    std::set<int> out;
    for (int s = 0; s < m.num_states(); ++s) {
        bool dead = true;
        for (int t : m.out[s]) {
            if (!b.contains(m.transitions[t].label)) {
                dead = false;
                break;
            }
        }
        if (dead) out.insert(s);
    }
    return out;
}

// Pending justness obligations: non-blockable transitions whose source has
// been visited and which nothing has interfered with since.
using ObligationSet = std::vector<int>; // ascending transition ids

// One incremental step of obligation tracking: leaving at_state via taken
// first raises an obligation for every non-blockable transition enabled
// there, then discharges everything taken interferes with (including itself).
inline ObligationSet obligations_update(const Ltsc& m, const BlockSet& b, const ObligationSet& o,
                                        int at_state, int taken) {
    std::set<int> work(o.begin(), o.end());
    for (int t : m.out[at_state])
        if (!b.contains(m.transitions[t].label)) work.insert(t);
    ObligationSet result;
    for (int t : work)
        if (!m.interferes(t, taken)) result.push_back(t);
    return result;
}

// Decides whether the infinite path <reaching path>.cycle^omega is complete,
// given the obligations pending when the cycle is entered. A task T is
// B-enabled in a state iff the state has an outgoing transition in T whose
// label is not blockable.
inline bool cycle_complete(const Ltsc& m, const CompletenessCriterion& cc, const BlockSet& b,
                           const ObligationSet& entry, const std::set<int>& cycle_states,
                           const std::set<int>& cycle_transitions) {
    auto b_enables = [&](int state, const TaskSet::Task& task) {
        for (int t : task.transitions)
            if (m.transitions[t].source == state && !b.contains(m.transitions[t].label))
                return true;
        return false;
    };

    switch (cc.kind) {
        case CompletenessCriterion::Top:
        case CompletenessCriterion::Progress:
            return true;

        case CompletenessCriterion::Justness: {
            auto discharged = [&](int t) {
                for (int u : cycle_transitions)
                    if (m.interferes(t, u)) return true;
                return false;
            };
            for (int t : entry)
                if (!discharged(t)) return false;
            for (int t = 0; t < m.num_transitions(); ++t) {
                if (b.contains(m.transitions[t].label)) continue;
                if (!cycle_states.count(m.transitions[t].source)) continue;
                if (!discharged(t)) return false;
            }
            return true;
        }

        case CompletenessCriterion::WeakFairness: {
            for (auto& task : cc.tasks.tasks) {
                bool occurs = std::any_of(task.transitions.begin(), task.transitions.end(),
                                          [&](int t) { return cycle_transitions.count(t) > 0; });
                if (occurs) continue;
                bool perpetually = true;
                for (int s : cycle_states)
                    if (!b_enables(s, task)) {
                        perpetually = false;
                        break;
                    }
                if (perpetually) return false;
            }
            return true;
        }

        case CompletenessCriterion::StrongFairness: {
            for (auto& task : cc.tasks.tasks) {
                bool occurs = std::any_of(task.transitions.begin(), task.transitions.end(),
                                          [&](int t) { return cycle_transitions.count(t) > 0; });
                if (occurs) continue;
                bool ever_enabled = std::any_of(cycle_states.begin(), cycle_states.end(),
                                                [&](int s) { return b_enables(s, task); });
                if (ever_enabled) return false;
            }
            return true;
        }
    }
    return true;
}

} // namespace retlc
