#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "retlc/errors.hpp"
#include "retlc/eval.hpp"
#include "retlc/formula.hpp"
#include "retlc/scc.hpp"

namespace retlc {

// Generalized Buchi automaton produced by the tableau translation. Nodes
// carry the literal constraints (an edge into a node is guarded by that
// node's literals); acceptance is one node set per until-subformula, encoded
// as a bitmask per node.
struct Gba {
    struct Node {
        std::vector<std::string> pos_atoms;
        std::vector<std::string> neg_atoms;
        std::vector<int> succ;
        std::uint64_t acc = 0;
    };

    std::vector<Node> nodes;
    std::vector<int> initial;
    int n_acc = 0;

    bool letter_ok(int node, const AtomSet& letter) const {
        const Node& q = nodes[node];
        for (auto& a : q.pos_atoms)
            if (!letter.count(a)) return false;
        for (auto& a : q.neg_atoms)
            if (letter.count(a)) return false;
        return true;
    }

    std::uint64_t all_acc_mask() const {
        return n_acc == 0 ? 0 : (n_acc == 64 ? ~0ull : ((1ull << n_acc) - 1));
    }
};

namespace detail {

// Negation normal form over the core connectives; R (release) is the internal
// dual of U and never escapes the translation.
struct NnfArena {
    enum Kind { TT, FF, Lit, And, Or, U, R };

    struct Node {
        Kind kind;
        std::string atom; // Lit
        bool negated = false;
        int a = -1, b = -1;
    };

    std::vector<Node> nodes;
    std::map<std::tuple<int, std::string, bool, int, int>, int> memo;

    int intern(Kind k, std::string atom, bool neg, int a, int b) {
        auto key = std::make_tuple(static_cast<int>(k), atom, neg, a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int id = static_cast<int>(nodes.size());
        nodes.push_back({k, atom, neg, a, b});
        memo.emplace(key, id);
        return id;
    }

    int tt() { return intern(TT, "", false, -1, -1); }
    int ff() { return intern(FF, "", false, -1, -1); }
    int lit(const std::string& atom, bool neg) { return intern(Lit, atom, neg, -1, -1); }
    int mk(Kind k, int a, int b) { return intern(k, "", false, a, b); }

    int from_ltl(const LtlPtr& f, bool positive) {
        switch (f->kind) {
            case Ltl::True: return positive ? tt() : ff();
            case Ltl::False: return positive ? ff() : tt();
            case Ltl::Atom: return lit(f->atom, !positive);
            case Ltl::Not: return from_ltl(f->a, !positive);
            case Ltl::And:
                return mk(positive ? And : Or, from_ltl(f->a, positive), from_ltl(f->b, positive));
            case Ltl::Or:
                return mk(positive ? Or : And, from_ltl(f->a, positive), from_ltl(f->b, positive));
            case Ltl::Implies:
                return mk(positive ? Or : And, from_ltl(f->a, !positive), from_ltl(f->b, positive));
            case Ltl::F:
                return positive ? mk(U, tt(), from_ltl(f->a, true))
                                : mk(R, ff(), from_ltl(f->a, false));
            case Ltl::G:
                return positive ? mk(R, ff(), from_ltl(f->a, true))
                                : mk(U, tt(), from_ltl(f->a, false));
            case Ltl::U:
                return positive ? mk(U, from_ltl(f->a, true), from_ltl(f->b, true))
                                : mk(R, from_ltl(f->a, false), from_ltl(f->b, false));
            case Ltl::W:
                // W(psi,phi) = G psi | psi U phi
                if (positive)
                    return mk(Or, mk(R, ff(), from_ltl(f->a, true)),
                              mk(U, from_ltl(f->a, true), from_ltl(f->b, true)));
                return mk(And, mk(U, tt(), from_ltl(f->a, false)),
                          mk(R, from_ltl(f->a, false), from_ltl(f->b, false)));
        }
        return ff();
    }
};

// GPVW-style tableau expansion: a seed (the obligations on the current
// position) is decomposed into fully expanded nodes (literals + next-seed).
struct GpvwBuilder {
    NnfArena& arena;

    using FidSet = std::set<int>;

    struct Expanded {
        FidSet old;
        FidSet next;
    };

    std::map<FidSet, std::vector<int>> seed_memo; // seed -> automaton node ids
    std::vector<Expanded> result_nodes;           // automaton nodes
    std::map<std::pair<FidSet, FidSet>, int> node_index;

    explicit GpvwBuilder(NnfArena& a) : arena(a) {}

    bool contradicts(const FidSet& old, int lit_id) const {
        const auto& n = arena.nodes[lit_id];
        for (int f : old) {
            const auto& m = arena.nodes[f];
            if (m.kind == NnfArena::Lit && m.atom == n.atom && m.negated != n.negated) return true;
        }
        return false;
    }

    void expand(FidSet neu, FidSet old, FidSet next, std::vector<int>& out) {
        while (!neu.empty()) {
            int f = *neu.begin();
            neu.erase(neu.begin());
            if (old.count(f)) continue;
            const auto& n = arena.nodes[f];
            switch (n.kind) {
                case NnfArena::TT:
                    old.insert(f);
                    continue;
                case NnfArena::FF:
                    return; // contradiction, drop this node
                case NnfArena::Lit:
                    if (contradicts(old, f)) return;
                    old.insert(f);
                    continue;
                case NnfArena::And:
                    old.insert(f);
                    neu.insert(n.a);
                    neu.insert(n.b);
                    continue;
                case NnfArena::Or: {
                    old.insert(f);
                    FidSet neu2 = neu, old2 = old, next2 = next;
                    neu2.insert(n.a);
                    expand(std::move(neu2), std::move(old2), std::move(next2), out);
                    neu.insert(n.b);
                    continue;
                }
                case NnfArena::U: {
                    old.insert(f);
                    FidSet neu2 = neu, old2 = old, next2 = next;
                    neu2.insert(n.b);
                    expand(std::move(neu2), std::move(old2), std::move(next2), out);
                    neu.insert(n.a);
                    next.insert(f);
                    continue;
                }
                case NnfArena::R: {
                    old.insert(f);
                    FidSet neu2 = neu, old2 = old, next2 = next;
                    neu2.insert(n.a);
                    neu2.insert(n.b);
                    expand(std::move(neu2), std::move(old2), std::move(next2), out);
                    neu.insert(n.b);
                    next.insert(f);
                    continue;
                }
            }
        }
        auto key = std::make_pair(old, next);
        auto it = node_index.find(key);
        if (it != node_index.end()) {
            out.push_back(it->second);
            return;
        }
        int id = static_cast<int>(result_nodes.size());
        result_nodes.push_back({old, next});
        node_index.emplace(key, id);
        out.push_back(id);
    }

    const std::vector<int>& expand_seed(const FidSet& seed) {
        auto it = seed_memo.find(seed);
        if (it != seed_memo.end()) return it->second;
        auto [slot, inserted] = seed_memo.emplace(seed, std::vector<int>{});
        std::vector<int> out;
        expand(seed, {}, {}, out);
        // dedup node ids, keep first occurrence order
        std::vector<int> uniq;
        std::set<int> seen;
        for (int id : out)
            if (seen.insert(id).second) uniq.push_back(id);
        slot->second = std::move(uniq);
        return slot->second;
    }
};

} // namespace detail

// Tableau translation of an X-free LTL formula into a generalized Buchi
// automaton accepting exactly the satisfying omega-words.
inline Gba ltl_to_gba(const LtlPtr& formula) {
    detail::NnfArena arena;
    int root = arena.from_ltl(formula, true);

    detail::GpvwBuilder builder(arena);
    std::vector<int> initial = builder.expand_seed({root});

    // worklist over seeds reachable through Next sets
    std::vector<detail::GpvwBuilder::FidSet> pending;
    for (std::size_t i = 0; i < builder.result_nodes.size(); ++i)
        pending.push_back(builder.result_nodes[i].next);
    while (!pending.empty()) {
        auto seed = pending.back();
        pending.pop_back();
        std::size_t before = builder.result_nodes.size();
        builder.expand_seed(seed);
        for (std::size_t i = before; i < builder.result_nodes.size(); ++i)
            pending.push_back(builder.result_nodes[i].next);
    }

    // collect U-subformulas appearing anywhere (acceptance sets)
    std::vector<int> until_ids;
    std::map<int, int> until_index;
    for (std::size_t i = 0; i < arena.nodes.size(); ++i) {
        if (arena.nodes[i].kind == detail::NnfArena::U) {
            until_index[static_cast<int>(i)] = static_cast<int>(until_ids.size());
            until_ids.push_back(static_cast<int>(i));
        }
    }
    if (until_ids.size() > 64) throw Error("formula has too many until-subformulas");

    Gba gba;
    gba.n_acc = static_cast<int>(until_ids.size());
    gba.nodes.resize(builder.result_nodes.size());
    for (std::size_t i = 0; i < builder.result_nodes.size(); ++i) {
        const auto& en = builder.result_nodes[i];
        Gba::Node& node = gba.nodes[i];
        for (int f : en.old) {
            const auto& n = arena.nodes[f];
            if (n.kind == detail::NnfArena::Lit)
                (n.negated ? node.neg_atoms : node.pos_atoms).push_back(n.atom);
        }
        for (auto& [uid, bit] : until_index) {
            const auto& u = arena.nodes[uid];
            if (!en.old.count(uid) || en.old.count(u.b)) node.acc |= 1ull << bit;
        }
        for (int succ : builder.expand_seed(en.next)) node.succ.push_back(succ);
    }
    gba.initial = initial;
    return gba;
}

// Decides whether the automaton accepts prefix.cycle^omega (used to
// cross-validate the translation against the direct lasso semantics).
inline bool gba_accepts_lasso(const Gba& gba, const std::vector<AtomSet>& prefix,
                              const std::vector<AtomSet>& cycle) {
    if (cycle.empty()) throw Error("gba_accepts_lasso: empty cycle");
    std::vector<AtomSet> word(prefix);
    word.insert(word.end(), cycle.begin(), cycle.end());
    int n = static_cast<int>(word.size());
    int cb = static_cast<int>(prefix.size());
    int nq = static_cast<int>(gba.nodes.size());

    auto pid = [&](int i, int q) { return i * nq + q; };
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) * nq);
    std::vector<char> valid(static_cast<std::size_t>(n) * nq, 0);
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < nq; ++q)
            valid[pid(i, q)] = gba.letter_ok(q, word[i]) ? 1 : 0;
    for (int i = 0; i < n; ++i) {
        int succ_i = (i == n - 1) ? cb : i + 1;
        for (int q = 0; q < nq; ++q) {
            if (!valid[pid(i, q)]) continue;
            for (int q2 : gba.nodes[q].succ)
                if (valid[pid(succ_i, q2)]) adj[pid(i, q)].push_back(pid(succ_i, q2));
        }
    }

    // reachability from valid initial product states
    std::vector<char> reach(adj.size(), 0);
    std::vector<int> stack;
    for (int q0 : gba.initial) {
        if (valid[pid(0, q0)] && !reach[pid(0, q0)]) {
            reach[pid(0, q0)] = 1;
            stack.push_back(pid(0, q0));
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!reach[w]) {
                reach[w] = 1;
                stack.push_back(w);
            }
    }

    auto [ncomp, comp] = detail::tarjan_scc(static_cast<int>(adj.size()), adj);
    std::vector<std::uint64_t> comp_acc(ncomp, 0);
    std::vector<char> comp_edge(ncomp, 0), comp_reach(ncomp, 0);
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (!reach[v]) continue;
        comp_reach[comp[v]] = 1;
        comp_acc[comp[v]] |= gba.nodes[v % nq].acc;
        for (int w : adj[v])
            if (comp[w] == comp[v]) comp_edge[comp[v]] = 1;
    }
    for (int c = 0; c < ncomp; ++c)
        if (comp_reach[c] && comp_edge[c] && comp_acc[c] == gba.all_acc_mask()) return true;
    return false;
}

} // namespace retlc
