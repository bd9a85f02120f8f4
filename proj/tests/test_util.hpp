#pragma once

// Shared generators for the randomized suites. Deterministic: every generator
// takes an explicit seed.

#include <cstdint>
#include <string>
#include <vector>

#include "retlc/eval.hpp"
#include "retlc/formula.hpp"
#include "retlc/ltsc.hpp"

namespace testutil {

// xorshift-style PRNG, deterministic across platforms
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    bool chance(int percent) { return below(100) < percent; }
};

inline retlc::LtlPtr random_formula(Rng& rng, const std::vector<std::string>& atoms, int depth) {
    using namespace retlc::ltl;
    if (depth == 0 || rng.chance(25)) {
        int pick = rng.below(static_cast<int>(atoms.size()) + 2);
        if (pick == 0) return tt();
        if (pick == 1) return ff();
        return atom(atoms[pick - 2]);
    }
    switch (rng.below(10)) {
        case 0: return negate(random_formula(rng, atoms, depth - 1));
        case 1: return conj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
        case 2: return disj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
        case 3: return implies(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
        case 4:
        case 5: return finally(random_formula(rng, atoms, depth - 1));
        case 6:
        case 7: return globally(random_formula(rng, atoms, depth - 1));
        case 8: return until(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
        default: return weak_until(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    }
}

inline std::vector<retlc::AtomSet> random_word(Rng& rng, const std::vector<std::string>& atoms,
                                               int len) {
    std::vector<retlc::AtomSet> w(len);
    for (auto& pos : w)
        for (auto& a : atoms)
            if (rng.chance(40)) pos.insert(a);
    return w;
}

// Random small LTSC: out-degree capped at 2 per state so the brute-force
// oracle stays tractable at bounds (8,8). The concurrency relation is a
// random symmetric irreflexive relation (the closure axiom need not hold).
inline retlc::Ltsc random_ltsc(Rng& rng, int max_states = 6, int max_transitions = 10,
                               const std::vector<std::string>& labels = {"a", "b"},
                               int tau_percent = 20, int conc_percent = 30) {
    retlc::Ltsc m;
    int ns = 1 + rng.below(max_states);
    for (int s = 0; s < ns; ++s) m.states.push_back("s" + std::to_string(s));
    m.initial = 0;
    std::vector<int> degree(ns, 0);
    int nt = rng.below(max_transitions + 1);
    for (int i = 0; i < nt; ++i) {
        int src = rng.below(ns);
        bool placed = false;
        for (int probe = 0; probe < ns; ++probe) {
            int cand = (src + probe) % ns;
            if (degree[cand] < 2) {
                src = cand;
                placed = true;
                break;
            }
        }
        if (!placed) break;
        ++degree[src];
        int tgt = rng.below(ns);
        retlc::ActionLabel label =
            rng.chance(tau_percent)
                ? retlc::ActionLabel::tau()
                : retlc::ActionLabel::visible(labels[rng.below(static_cast<int>(labels.size()))]);
        int id = static_cast<int>(m.transitions.size());
        m.transitions.push_back({id, src, tgt, label});
    }
    for (int a = 0; a < static_cast<int>(m.transitions.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(m.transitions.size()); ++b)
            if (rng.chance(conc_percent)) m.concurrency_pairs.push_back({a, b});
    m.finish();
    return m;
}

} // namespace testutil
