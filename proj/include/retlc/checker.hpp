#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "retlc/criteria.hpp"
#include "retlc/errors.hpp"
#include "retlc/eval.hpp"
#include "retlc/formula.hpp"
#include "retlc/gba.hpp"
#include "retlc/ltsc.hpp"
#include "retlc/oracle.hpp"
#include "retlc/scc.hpp"

namespace retlc {

struct Verdict {
    bool holds = true;

    enum WitnessKind { None, FinitePath, LassoPath } witness_kind = None;
    LtsPath finite_witness; // complete B-deadlock-terminated path refuting the formula
    Lasso lasso_witness;    // complete infinite path refuting the formula

    struct Stats {
        std::size_t product_states = 0;
        std::size_t explored = 0; // product edges
    } stats;
};

namespace detail {

// Product of the flattened model (DV positions plus termination self-loops at
// B-deadlock states) with a state-labelled GBA, extended with justness
// obligation tracking when the criterion asks for it. Positions
// [0, k.n_states) are Kripke positions; position k.n_states + s is the
// terminated copy of LTS state s.
struct ProductSearch {
    const Ltsc& m;
    const KripkeStructure& k;
    const Gba& gba;
    const CompletenessCriterion& cc;
    const BlockSet& b;
    const std::vector<AtomSet>& atoms; // per Kripke position

    bool justness;
    std::vector<char> term_capable;            // per LTS state
    std::vector<char> trackable;               // per transition: has a concurrent partner
    std::vector<std::vector<int>> enabled_tracked; // per state: non-blockable trackable outgoing

    std::vector<ObligationSet> obls;
    std::map<ObligationSet, int> obl_index;

    struct Node {
        int pos, q, obl;
        int layer;
        int parent;       // BFS tree
        int parent_taken; // transition consumed on the tree edge, -1 if none
    };
    struct Edge {
        int to;
        int taken;
        bool term;
    };

    std::vector<Node> nodes;
    std::vector<std::vector<Edge>> edges;
    std::map<std::tuple<int, int, int>, int> node_index;
    std::size_t edge_count = 0;

    ProductSearch(const Ltsc& m_, const KripkeStructure& k_, const Gba& gba_,
                  const CompletenessCriterion& cc_, const BlockSet& b_,
                  const std::vector<AtomSet>& atoms_)
        : m(m_), k(k_), gba(gba_), cc(cc_), b(b_), atoms(atoms_) {
        justness = cc.kind == CompletenessCriterion::Justness;
        term_capable.assign(m.num_states(), 0);
        if (cc.kind == CompletenessCriterion::Top) {
            term_capable.assign(m.num_states(), 1);
        } else {
            for (int s : b_deadlock_states(m, b)) term_capable[s] = 1;
        }
        trackable.assign(m.num_transitions(), 0);
        for (int t = 0; t < m.num_transitions(); ++t)
            for (int u = 0; u < m.num_transitions(); ++u)
                if (m.concurrent(t, u)) {
                    trackable[t] = 1;
                    break;
                }
        enabled_tracked.assign(m.num_states(), {});
        for (int s = 0; s < m.num_states(); ++s)
            for (int t : m.out[s])
                if (trackable[t] && !b.contains(m.transitions[t].label))
                    enabled_tracked[s].push_back(t);
        obls.push_back({});
        obl_index.emplace(ObligationSet{}, 0);
    }

    const AtomSet& pos_atoms(int pos) const {
        return pos < k.n_states ? atoms[pos] : atoms[pos - k.n_states];
    }

    bool is_term_pos(int pos) const { return pos >= k.n_states; }

    int intern_obl(ObligationSet o) {
        auto it = obl_index.find(o);
        if (it != obl_index.end()) return it->second;
        int id = static_cast<int>(obls.size());
        obl_index.emplace(o, id);
        obls.push_back(std::move(o));
        return id;
    }

    // Obligation step, pruned to transitions with at least one concurrent
    // partner; the rest are discharged by whatever fires next, so they can
    // never block a cycle.
    int step_obl(int obl_id, int at_state, int taken) {
        const ObligationSet& cur = obls[obl_id];
        ObligationSet merged;
        std::merge(cur.begin(), cur.end(), enabled_tracked[at_state].begin(),
                   enabled_tracked[at_state].end(), std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        ObligationSet next;
        for (int t : merged)
            if (m.concurrent(t, taken)) next.push_back(t);
        return intern_obl(std::move(next));
    }

    int find_or_add(int pos, int q, int obl, int parent, int parent_taken, int layer) {
        auto key = std::make_tuple(pos, q, obl);
        auto it = node_index.find(key);
        if (it != node_index.end()) return it->second;
        int id = static_cast<int>(nodes.size());
        node_index.emplace(key, id);
        nodes.push_back({pos, q, obl, layer, parent, parent_taken});
        edges.emplace_back();
        return id;
    }

    void build(const std::vector<int>& seed_positions) {
        for (int pos : seed_positions)
            for (int q0 : gba.initial)
                if (gba.letter_ok(q0, pos_atoms(pos))) find_or_add(pos, q0, 0, -1, -1, 0);

        for (std::size_t u = 0; u < nodes.size(); ++u) {
            int pos = nodes[u].pos, q = nodes[u].q, obl = nodes[u].obl;
            int layer = nodes[u].layer + 1;
            auto link = [&](int pos2, int obl2, int taken, bool term) {
                for (int q2 : gba.nodes[q].succ) {
                    if (!gba.letter_ok(q2, pos_atoms(pos2))) continue;
                    int v = find_or_add(pos2, q2, obl2, static_cast<int>(u), taken, layer);
                    edges[u].push_back({v, taken, term});
                    ++edge_count;
                }
            };
            if (!is_term_pos(pos)) {
                for (int e : k.out_edges[pos]) {
                    const KripkeEdge& ke = k.edges[e];
                    int obl2 = obl;
                    if (justness && ke.taken >= 0) obl2 = step_obl(obl, pos, ke.taken);
                    link(ke.to, obl2, ke.taken, false);
                }
                if (pos < m.num_states() && term_capable[pos])
                    link(k.n_states + pos, obl, -1, true);
            } else {
                link(pos, obl, -1, true);
            }
            if (nodes.size() > 50000000) throw Error("product exploded");
        }
    }

    // ---- complete accepting SCC analysis -----------------------------------

    struct BadCycle {
        std::vector<int> members; // product nodes of the final (sub-)SCC
        bool term = false;
    };

    std::vector<char> node_bad_reach; // filled by analyze(): can reach a bad SCC
    std::vector<BadCycle> bad;        // deterministic order

    struct SccInfo {
        std::set<int> states;       // LTS states of state-position nodes
        std::set<int> transitions;  // transitions taken on internal edges
        ObligationSet pending;      // union of obligations
        std::uint64_t acc = 0;
        bool has_edge = false;
        bool term = true;
    };

    // membership epochs avoid touching all product nodes per SCC
    std::vector<int> mark_;
    int epoch_ = 0;

    int mark_members(const std::vector<int>& members) {
        if (mark_.size() < nodes.size()) mark_.resize(nodes.size(), 0);
        ++epoch_;
        for (int v : members) mark_[v] = epoch_;
        return epoch_;
    }

    SccInfo scc_info(const std::vector<int>& members, int epoch) const {
        SccInfo info;
        std::set<int> pend;
        for (int v : members) {
            const Node& n = nodes[v];
            info.acc |= gba.nodes[n.q].acc;
            if (!is_term_pos(n.pos)) info.term = false;
            if (n.pos < m.num_states()) info.states.insert(n.pos);
            for (int t : obls[n.obl]) pend.insert(t);
            for (const Edge& e : edges[v]) {
                if (mark_[e.to] != epoch) continue;
                info.has_edge = true;
                if (e.taken >= 0) info.transitions.insert(e.taken);
            }
        }
        info.pending.assign(pend.begin(), pend.end());
        return info;
    }

    bool scc_complete(const SccInfo& info) const {
        if (info.term) return true; // a finite B-deadlock-terminated path
        return cycle_complete(m, cc, b, info.pending, info.states, info.transitions);
    }

    // Examines one strongly connected node set: either it contains a complete
    // accepting covering cycle, or (under strong fairness) nodes enabling
    // unserved tasks are dropped and the remainder re-decomposed.
    std::optional<BadCycle> search_group(const std::vector<int>& grp) {
        int epoch = mark_members(grp);
        SccInfo info = scc_info(grp, epoch);
        if (!info.has_edge) return std::nullopt;
        if (info.acc != gba.all_acc_mask()) return std::nullopt; // sub-cycles cannot gain sets
        if (scc_complete(info)) {
            BadCycle bc;
            bc.members = grp;
            bc.term = info.term;
            return bc;
        }
        if (cc.kind != CompletenessCriterion::StrongFairness) return std::nullopt;

        std::set<int> drop_state;
        bool any_bad_task = false;
        for (auto& task : cc.tasks.tasks) {
            bool occurs = std::any_of(task.transitions.begin(), task.transitions.end(),
                                      [&](int t) { return info.transitions.count(t) > 0; });
            if (occurs) continue;
            for (int t : task.transitions) {
                int s = m.transitions[t].source;
                if (info.states.count(s) && !b.contains(m.transitions[t].label)) {
                    drop_state.insert(s);
                    any_bad_task = true;
                }
            }
        }
        if (!any_bad_task) return std::nullopt;
        std::vector<int> rest;
        for (int v : grp) {
            int pos = nodes[v].pos;
            if (pos < m.num_states() && drop_state.count(pos)) continue;
            rest.push_back(v);
        }
        if (rest.size() == grp.size() || rest.empty()) return std::nullopt;

        // re-decompose the remainder (epoch-local tarjan)
        int sub_epoch = mark_members(rest);
        std::map<int, int> local;
        for (std::size_t i = 0; i < rest.size(); ++i) local[rest[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> adj(rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (const Edge& e : edges[rest[i]])
                if (mark_[e.to] == sub_epoch) adj[i].push_back(local[e.to]);
        auto [ncomp, comp] = tarjan_scc(static_cast<int>(rest.size()), adj);
        std::vector<std::vector<int>> groups(ncomp);
        for (std::size_t i = 0; i < rest.size(); ++i) groups[comp[i]].push_back(rest[i]);
        std::vector<int> order = order_groups(groups);
        for (int c : order)
            if (auto sub = search_group(groups[c])) return sub;
        return std::nullopt;
    }

    // deterministic processing order: by (min layer, min node id)
    std::vector<int> order_groups(const std::vector<std::vector<int>>& groups) const {
        int ncomp = static_cast<int>(groups.size());
        std::vector<std::pair<int, int>> ranks(ncomp);
        for (int c = 0; c < ncomp; ++c) {
            int best_layer = nodes[groups[c].front()].layer, best_id = groups[c].front();
            for (int v : groups[c]) {
                best_layer = std::min(best_layer, nodes[v].layer);
                best_id = std::min(best_id, v);
            }
            ranks[c] = {best_layer, best_id};
        }
        std::vector<int> order(ncomp);
        for (int c = 0; c < ncomp; ++c) order[c] = c;
        std::sort(order.begin(), order.end(), [&](int a, int b2) { return ranks[a] < ranks[b2]; });
        return order;
    }

    // Finds all maximal SCCs that contain a complete accepting cycle (possibly
    // after strong-fairness shrinking) and computes which product nodes reach
    // one. With stop_at_first, stops after the best bad cycle.
    void analyze(bool stop_at_first) {
        int n = static_cast<int>(nodes.size());
        std::vector<std::vector<int>> adj(n);
        for (int v = 0; v < n; ++v)
            for (const Edge& e : edges[v]) adj[v].push_back(e.to);
        auto [ncomp, comp] = tarjan_scc(n, adj);
        std::vector<std::vector<int>> groups(ncomp);
        for (int v = 0; v < n; ++v) groups[comp[v]].push_back(v);

        std::vector<int> order = order_groups(groups);
        for (int c : order) {
            if (auto found = search_group(groups[c])) {
                bad.push_back(*found);
                if (stop_at_first) break;
            }
        }

        node_bad_reach.assign(n, 0);
        std::vector<int> stack;
        std::vector<std::vector<int>> radj(n);
        for (int v = 0; v < n; ++v)
            for (const Edge& e : edges[v]) radj[e.to].push_back(v);
        for (auto& bc : bad)
            for (int v : bc.members)
                if (!node_bad_reach[v]) {
                    node_bad_reach[v] = 1;
                    stack.push_back(v);
                }
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : radj[v])
                if (!node_bad_reach[w]) {
                    node_bad_reach[w] = 1;
                    stack.push_back(w);
                }
        }
    }

    // ---- witness construction ----------------------------------------------

    struct WalkEdge {
        int from, to, taken;
        bool term;
    };

    // Deterministic covering walk through the bad cycle's node set satisfying
    // every acceptance set and completeness requirement. Greedy nearest-first
    // legs keep it short in practice.
    // TODO: a post-pass could splice out detours between requirement hits.
    std::vector<WalkEdge> build_cycle(const BadCycle& bc, int& entry_out) {
        std::vector<char> in_set(nodes.size(), 0);
        for (int v : bc.members) in_set[v] = 1;

        int entry = bc.members.front();
        for (int v : bc.members)
            if (std::make_pair(nodes[v].layer, v) < std::make_pair(nodes[entry].layer, entry))
                entry = v;
        entry_out = entry;

        SccInfo info = scc_info(bc.members, mark_members(bc.members));

        struct NodeReq { std::vector<int> targets; bool done = false; };
        struct EdgeReq { std::vector<char> taken_ok; bool done = false; };
        std::vector<NodeReq> node_reqs;
        std::vector<EdgeReq> edge_reqs;

        for (int bit = 0; bit < gba.n_acc; ++bit) {
            NodeReq r;
            for (int v : bc.members)
                if (gba.nodes[nodes[v].q].acc & (1ull << bit)) r.targets.push_back(v);
            if (!r.targets.empty()) node_reqs.push_back(std::move(r));
        }
        if (!bc.term) {
            if (cc.kind == CompletenessCriterion::Justness) {
                for (int t : info.pending) {
                    EdgeReq r;
                    r.taken_ok.assign(m.num_transitions(), 0);
                    for (int u : info.transitions)
                        if (m.interferes(t, u)) r.taken_ok[u] = 1;
                    edge_reqs.push_back(std::move(r));
                }
            }
            if (cc.task_based()) {
                for (auto& task : cc.tasks.tasks) {
                    bool occurs = std::any_of(task.transitions.begin(), task.transitions.end(),
                                              [&](int t) { return info.transitions.count(t) > 0; });
                    bool enabled = false, unenabled_state = false;
                    for (int s : info.states) {
                        bool en = false;
                        for (int t : task.transitions)
                            if (m.transitions[t].source == s && !b.contains(m.transitions[t].label))
                                en = true;
                        if (en) enabled = true;
                        else unenabled_state = true;
                    }
                    if (cc.kind == CompletenessCriterion::StrongFairness) {
                        if (!enabled) continue;
                        EdgeReq r;
                        r.taken_ok.assign(m.num_transitions(), 0);
                        for (int t : task.transitions)
                            if (info.transitions.count(t)) r.taken_ok[t] = 1;
                        edge_reqs.push_back(std::move(r));
                    } else { // weak fairness
                        if (occurs) {
                            EdgeReq r;
                            r.taken_ok.assign(m.num_transitions(), 0);
                            for (int t : task.transitions)
                                if (info.transitions.count(t)) r.taken_ok[t] = 1;
                            edge_reqs.push_back(std::move(r));
                        } else if (unenabled_state) {
                            NodeReq r;
                            for (int v : bc.members) {
                                int pos = nodes[v].pos;
                                if (pos >= m.num_states()) continue;
                                bool en = false;
                                for (int t : task.transitions)
                                    if (m.transitions[t].source == pos &&
                                        !b.contains(m.transitions[t].label))
                                        en = true;
                                if (!en) r.targets.push_back(v);
                            }
                            node_reqs.push_back(std::move(r));
                        }
                    }
                }
            }
        }

        auto node_satisfies = [&](int v) {
            for (auto& r : node_reqs)
                if (!r.done && std::find(r.targets.begin(), r.targets.end(), v) != r.targets.end())
                    r.done = true;
        };
        auto edge_satisfies = [&](int taken) {
            if (taken < 0) return;
            for (auto& r : edge_reqs)
                if (!r.done && r.taken_ok[taken]) r.done = true;
        };
        auto unmet = [&] {
            for (auto& r : node_reqs)
                if (!r.done) return true;
            for (auto& r : edge_reqs)
                if (!r.done) return true;
            return false;
        };

        std::vector<WalkEdge> walk;
        int cur = entry;
        node_satisfies(cur);

        // BFS within the set from cur to the nearest fulfilment of any open
        // requirement (or to a fixed target node when target >= 0).
        auto bfs_leg = [&](int from, int target) -> std::vector<WalkEdge> {
            std::vector<int> par(nodes.size(), -2);
            std::vector<WalkEdge> par_edge(nodes.size(), WalkEdge{-1, -1, -1, false});
            std::deque<int> queue;
            par[from] = -1;
            queue.push_back(from);
            auto reconstruct = [&](int v, std::optional<WalkEdge> extra) {
                std::vector<WalkEdge> leg;
                int x = v;
                while (par[x] != -1) {
                    leg.push_back(par_edge[x]);
                    x = par[x];
                }
                std::reverse(leg.begin(), leg.end());
                if (extra) leg.push_back(*extra);
                return leg;
            };
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                if (target >= 0 && v == target && v != from) return reconstruct(v, std::nullopt);
                if (target < 0 && v != from) {
                    for (auto& r : node_reqs)
                        if (!r.done &&
                            std::find(r.targets.begin(), r.targets.end(), v) != r.targets.end())
                            return reconstruct(v, std::nullopt);
                }
                for (const Edge& e : edges[v]) {
                    if (!in_set[e.to]) continue;
                    if (target < 0 && e.taken >= 0) {
                        for (auto& r : edge_reqs)
                            if (!r.done && r.taken_ok[e.taken])
                                return reconstruct(v, WalkEdge{v, e.to, e.taken, e.term});
                    }
                    if (par[e.to] == -2) {
                        par[e.to] = v;
                        par_edge[e.to] = {v, e.to, e.taken, e.term};
                        queue.push_back(e.to);
                    }
                }
            }
            throw Error("internal: witness walk target unreachable");
        };

        int guard = 0;
        while (unmet()) {
            if (++guard > 10000) throw Error("internal: witness walk did not converge");
            std::vector<WalkEdge> leg = bfs_leg(cur, -1);
            for (auto& e : leg) {
                walk.push_back(e);
                edge_satisfies(e.taken);
                node_satisfies(e.to);
            }
            cur = walk.back().to;
        }
        if (cur != entry || walk.empty()) {
            std::vector<WalkEdge> leg;
            if (cur == entry) {
                // need a nonempty loop: step to a successor first, then close
                const Edge* first = nullptr;
                for (const Edge& e : edges[cur])
                    if (in_set[e.to]) {
                        first = &e;
                        break;
                    }
                if (!first) throw Error("internal: bad cycle without internal edge");
                walk.push_back({cur, first->to, first->taken, first->term});
                cur = first->to;
                if (cur == entry) return walk;
            }
            leg = bfs_leg(cur, entry);
            for (auto& e : leg) walk.push_back(e);
        }
        return walk;
    }

    // Shortest product path (BFS tree) from a seed to the given node,
    // projected to the transitions taken.
    std::vector<WalkEdge> tree_path(int node) const {
        std::vector<WalkEdge> path;
        int v = node;
        while (nodes[v].parent != -1) {
            int p = nodes[v].parent;
            path.push_back({p, v, nodes[v].parent_taken, is_term_pos(nodes[v].pos)});
            v = p;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// LTL checking: P |= phi under (cc, B) iff no complete path refutes phi.
// ---------------------------------------------------------------------------

inline Verdict check_ltl(const Ltsc& m, const LtlPtr& phi, const CompletenessCriterion& cc,
                         const BlockSet& b) {
    if (cc.task_based()) cc.tasks.validate_for(m);

    KripkeStructure k = dv_translate(m);
    Gba aut = ltl_to_gba(ltl::negate(phi));
    detail::ProductSearch prod(m, k, aut, cc, b, k.labels);
    prod.build({k.initial_pos});
    prod.analyze(true);

    Verdict v;
    v.stats.product_states = prod.nodes.size();
    v.stats.explored = prod.edge_count;
    if (prod.bad.empty()) return v;

    v.holds = false;
    const auto& bc = prod.bad.front();
    int entry = -1;
    std::vector<detail::ProductSearch::WalkEdge> cycle_walk;
    if (!bc.term) cycle_walk = prod.build_cycle(bc, entry);
    else {
        entry = bc.members.front();
        for (int x : bc.members)
            if (std::make_pair(prod.nodes[x].layer, x) < std::make_pair(prod.nodes[entry].layer, entry))
                entry = x;
    }
    std::vector<detail::ProductSearch::WalkEdge> prefix_walk = prod.tree_path(entry);

    LtsPath prefix{m.initial, {}};
    for (auto& e : prefix_walk)
        if (e.taken >= 0) prefix.steps.push_back(e.taken);

    if (bc.term) {
        v.witness_kind = Verdict::FinitePath;
        v.finite_witness = prefix;
        if (!v.finite_witness.well_formed(m) || !finite_path_complete(m, b, v.finite_witness, cc) ||
            eval_ltl_finite(flatten_finite(m, v.finite_witness), phi))
            throw Error("internal: invalid finite counterexample");
    } else {
        v.witness_kind = Verdict::LassoPath;
        v.lasso_witness.prefix = prefix;
        for (auto& e : cycle_walk)
            if (e.taken >= 0) v.lasso_witness.cycle.push_back(e.taken);
        auto [pre, cyc] = flatten_lasso(m, v.lasso_witness);
        if (!v.lasso_witness.well_formed(m) ||
            !lasso_complete_per_definition(m, cc, b, v.lasso_witness) ||
            eval_ltl_lasso(pre, cyc, phi))
            throw Error("internal: invalid lasso counterexample");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Existential primitive: is there a complete path from a position satisfying
// F p / G p / p U q over position marks? This is the machinery behind the
// E-quantified CTL clauses.
// ---------------------------------------------------------------------------

struct PathGoal {
    enum Kind { Finally, Globally, Until } kind = Finally;
    std::vector<char> p; // per Kripke position of dv_translate(m)
    std::vector<char> q; // Until only
};

namespace detail {

// per-position answer for "some complete path from here satisfies the goal"
inline std::vector<char> exists_complete_from_positions(const Ltsc& m, const KripkeStructure& k,
                                                        const PathGoal& goal,
                                                        const CompletenessCriterion& cc,
                                                        const BlockSet& b) {
    std::vector<AtomSet> atoms(k.n_states);
    for (int i = 0; i < k.n_states; ++i) {
        if (goal.p[i]) atoms[i].insert("p");
        if (goal.kind == PathGoal::Until && goal.q[i]) atoms[i].insert("q");
    }
    LtlPtr f;
    switch (goal.kind) {
        case PathGoal::Finally: f = ltl::finally(ltl::atom("p")); break;
        case PathGoal::Globally: f = ltl::globally(ltl::atom("p")); break;
        case PathGoal::Until: f = ltl::until(ltl::atom("p"), ltl::atom("q")); break;
    }
    Gba aut = ltl_to_gba(f);
    ProductSearch prod(m, k, aut, cc, b, atoms);
    std::vector<int> seeds(k.n_states);
    for (int i = 0; i < k.n_states; ++i) seeds[i] = i;
    prod.build(seeds);
    prod.analyze(false);

    std::vector<char> out(k.n_states, 0);
    std::set<int> initial_q(aut.initial.begin(), aut.initial.end());
    for (std::size_t v = 0; v < prod.nodes.size(); ++v) {
        const auto& n = prod.nodes[v];
        if (n.obl != 0 || n.pos >= k.n_states || !initial_q.count(n.q)) continue;
        if (prod.node_bad_reach[v]) out[n.pos] = 1;
    }
    return out;
}

} // namespace detail

inline bool exists_complete_path_satisfying(const Ltsc& m, int start_state, const PathGoal& goal,
                                            const CompletenessCriterion& cc, const BlockSet& b) {
    if (cc.task_based()) cc.tasks.validate_for(m);
    KripkeStructure k = dv_translate(m);
    if (static_cast<int>(goal.p.size()) != k.n_states ||
        (goal.kind == PathGoal::Until && static_cast<int>(goal.q.size()) != k.n_states))
        throw Error("path goal marks do not match the model's position count");
    std::vector<char> sat = detail::exists_complete_from_positions(m, k, goal, cc, b);
    return sat[k.state_pos(start_state)] != 0;
}

// ---------------------------------------------------------------------------
// CTL checking by bottom-up labelling of the flattened structure. EX/AX use
// the edge relation directly (termination loops are not edges); the
// E-quantified path operators go through the existential primitive, and the
// A-forms through their dualities. The verdict carries no counterexample.
// ---------------------------------------------------------------------------

inline Verdict check_ctl(const Ltsc& m, const CtlPtr& phi, const CompletenessCriterion& cc,
                         const BlockSet& b) {
    if (cc.task_based()) cc.tasks.validate_for(m);
    KripkeStructure k = dv_translate(m);
    int n = k.n_states;

    auto exists_goal = [&](PathGoal::Kind kind, std::vector<char> p,
                           std::vector<char> q = {}) {
        PathGoal g;
        g.kind = kind;
        g.p = std::move(p);
        g.q = std::move(q);
        return detail::exists_complete_from_positions(m, k, g, cc, b);
    };
    auto negate_marks = [&](std::vector<char> v) {
        for (auto& x : v) x = !x;
        return v;
    };

    std::function<std::vector<char>(const CtlPtr&)> sat = [&](const CtlPtr& f) -> std::vector<char> {
        std::vector<char> out(n, 0);
        switch (f->kind) {
            case Ctl::True: return std::vector<char>(n, 1);
            case Ctl::False: return out;
            case Ctl::Atom: {
                for (int i = 0; i < n; ++i) out[i] = k.labels[i].count(f->atom) ? 1 : 0;
                return out;
            }
            case Ctl::Not: return negate_marks(sat(f->a));
            case Ctl::And: {
                auto x = sat(f->a), y = sat(f->b);
                for (int i = 0; i < n; ++i) out[i] = x[i] && y[i];
                return out;
            }
            case Ctl::Or: {
                auto x = sat(f->a), y = sat(f->b);
                for (int i = 0; i < n; ++i) out[i] = x[i] || y[i];
                return out;
            }
            case Ctl::Implies: {
                auto x = sat(f->a), y = sat(f->b);
                for (int i = 0; i < n; ++i) out[i] = !x[i] || y[i];
                return out;
            }
            case Ctl::EX: {
                auto x = sat(f->a);
                for (const KripkeEdge& e : k.edges)
                    if (x[e.to]) out[e.from] = 1;
                return out;
            }
            case Ctl::AX: {
                auto x = sat(f->a);
                std::vector<char> all(n, 1);
                for (const KripkeEdge& e : k.edges)
                    if (!x[e.to]) all[e.from] = 0;
                return all;
            }
            case Ctl::EF: return exists_goal(PathGoal::Finally, sat(f->a));
            case Ctl::EG: return exists_goal(PathGoal::Globally, sat(f->a));
            case Ctl::EU: return exists_goal(PathGoal::Until, sat(f->a), sat(f->b));
            case Ctl::AF: // AF f = !EG !f
                return negate_marks(exists_goal(PathGoal::Globally, negate_marks(sat(f->a))));
            case Ctl::AG: // AG f = !EF !f
                return negate_marks(exists_goal(PathGoal::Finally, negate_marks(sat(f->a))));
            case Ctl::AU: {
                // A[psi U phi] = !( E[!phi U (!psi & !phi)] | EG !phi )
                auto npsi = negate_marks(sat(f->a));
                auto nphi = negate_marks(sat(f->b));
                std::vector<char> both(n, 0);
                for (int i = 0; i < n; ++i) both[i] = npsi[i] && nphi[i];
                auto eu = exists_goal(PathGoal::Until, nphi, both);
                auto eg = exists_goal(PathGoal::Globally, nphi);
                for (int i = 0; i < n; ++i) out[i] = !(eu[i] || eg[i]);
                return out;
            }
        }
        return out;
    };

    std::vector<char> result = sat(phi);
    Verdict v;
    v.holds = result[k.state_pos(m.initial)] != 0;
    v.stats.product_states = 0;
    v.stats.explored = 0;
    return v;
}

} // namespace retlc
