#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "retlc/errors.hpp"
#include "retlc/formula.hpp"

namespace retlc {

// One position of a path word: the atomic predicates holding there.
using AtomSet = std::set<std::string>;

namespace detail {

// Evaluates a formula on every suffix of a word at once. Positions are
// 0..n-1; for lasso words the successor of n-1 wraps to cyc_begin, for finite
// words cyc_begin == n and position n-1 has no successor. Positions are held
// by pointer so lasso evaluation never copies atom sets.
//
// Bit i of a mask = "the suffix starting at position i satisfies the formula".
struct MaskEval64 {
    int n;
    int cyc_begin;
    const AtomSet* const* pos;

    bool bit(std::uint64_t m, int i) const { return (m >> i) & 1u; }
    std::uint64_t all() const { return n == 64 ? ~0ull : ((1ull << n) - 1); }

    std::uint64_t suffix_or(std::uint64_t m) const {
        std::uint64_t out = 0;
        bool acc = false;
        if (cyc_begin < n) {
            for (int i = cyc_begin; i < n; ++i) acc = acc || bit(m, i);
            if (acc)
                for (int i = cyc_begin; i < n; ++i) out |= 1ull << i;
        }
        for (int i = cyc_begin - 1; i >= 0; --i) {
            acc = acc || bit(m, i);
            if (acc) out |= 1ull << i;
        }
        return out;
    }

    std::uint64_t suffix_and(std::uint64_t m) const {
        std::uint64_t out = 0;
        bool acc = true;
        if (cyc_begin < n) {
            for (int i = cyc_begin; i < n; ++i) acc = acc && bit(m, i);
            if (acc)
                for (int i = cyc_begin; i < n; ++i) out |= 1ull << i;
        }
        for (int i = cyc_begin - 1; i >= 0; --i) {
            acc = acc && bit(m, i);
            if (acc) out |= 1ull << i;
        }
        return out;
    }

    std::uint64_t until(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t x = 0;
        if (cyc_begin < n) {
            // least fixpoint on the ring
            int laps = n - cyc_begin + 1;
            for (int k = 0; k < laps; ++k) {
                for (int i = n - 1; i >= cyc_begin; --i) {
                    int succ = (i == n - 1) ? cyc_begin : i + 1;
                    if (bit(b, i) || (bit(a, i) && bit(x, succ))) x |= 1ull << i;
                }
            }
        }
        for (int i = cyc_begin - 1; i >= 0; --i) {
            bool nxt = (i + 1 < n) && bit(x, i + 1);
            if (bit(b, i) || (bit(a, i) && nxt)) x |= 1ull << i;
        }
        return x;
    }

    std::uint64_t eval(const LtlPtr& f) const {
        switch (f->kind) {
            case Ltl::True: return all();
            case Ltl::False: return 0;
            case Ltl::Atom: {
                std::uint64_t m = 0;
                for (int i = 0; i < n; ++i)
                    if (pos[i]->count(f->atom)) m |= 1ull << i;
                return m;
            }
            case Ltl::Not: return all() & ~eval(f->a);
            case Ltl::And: return eval(f->a) & eval(f->b);
            case Ltl::Or: return eval(f->a) | eval(f->b);
            case Ltl::Implies: return (all() & ~eval(f->a)) | eval(f->b);
            case Ltl::F: return suffix_or(eval(f->a));
            case Ltl::G: return suffix_and(eval(f->a));
            case Ltl::U: return until(eval(f->a), eval(f->b));
            case Ltl::W: {
                std::uint64_t a = eval(f->a);
                return suffix_and(a) | until(a, eval(f->b));
            }
        }
        return 0;
    }
};

// Same algorithms for words longer than 64 positions.
struct MaskEvalWide {
    int n;
    int cyc_begin;
    const AtomSet* const* pos;
    using V = std::vector<char>;

    V suffix_or(const V& m) const {
        V out(n, 0);
        bool acc = false;
        if (cyc_begin < n) {
            for (int i = cyc_begin; i < n; ++i) acc = acc || m[i];
            for (int i = cyc_begin; i < n; ++i) out[i] = acc;
        }
        for (int i = cyc_begin - 1; i >= 0; --i) {
            acc = acc || m[i];
            out[i] = acc;
        }
        return out;
    }

    V suffix_and(const V& m) const {
        V out(n, 0);
        bool acc = true;
        if (cyc_begin < n) {
            for (int i = cyc_begin; i < n; ++i) acc = acc && m[i];
            for (int i = cyc_begin; i < n; ++i) out[i] = acc;
        }
        for (int i = cyc_begin - 1; i >= 0; --i) {
            acc = acc && m[i];
            out[i] = acc;
        }
        return out;
    }

    V until(const V& a, const V& b) const {
        V x(n, 0);
        if (cyc_begin < n) {
            int laps = n - cyc_begin + 1;
            for (int k = 0; k < laps; ++k)
                for (int i = n - 1; i >= cyc_begin; --i) {
                    int succ = (i == n - 1) ? cyc_begin : i + 1;
                    if (b[i] || (a[i] && x[succ])) x[i] = 1;
                }
        }
        for (int i = cyc_begin - 1; i >= 0; --i)
            if (b[i] || (a[i] && i + 1 < n && x[i + 1])) x[i] = 1;
        return x;
    }

    V eval(const LtlPtr& f) const {
        switch (f->kind) {
            case Ltl::True: return V(n, 1);
            case Ltl::False: return V(n, 0);
            case Ltl::Atom: {
                V m(n, 0);
                for (int i = 0; i < n; ++i) m[i] = pos[i]->count(f->atom) ? 1 : 0;
                return m;
            }
            case Ltl::Not: {
                V m = eval(f->a);
                for (auto& v : m) v = !v;
                return m;
            }
            case Ltl::And: {
                V x = eval(f->a), y = eval(f->b);
                for (int i = 0; i < n; ++i) x[i] = x[i] && y[i];
                return x;
            }
            case Ltl::Or: {
                V x = eval(f->a), y = eval(f->b);
                for (int i = 0; i < n; ++i) x[i] = x[i] || y[i];
                return x;
            }
            case Ltl::Implies: {
                V x = eval(f->a), y = eval(f->b);
                for (int i = 0; i < n; ++i) x[i] = !x[i] || y[i];
                return x;
            }
            case Ltl::F: return suffix_or(eval(f->a));
            case Ltl::G: return suffix_and(eval(f->a));
            case Ltl::U: return until(eval(f->a), eval(f->b));
            case Ltl::W: {
                V a = eval(f->a);
                V g = suffix_and(a);
                V u = until(a, eval(f->b));
                for (int i = 0; i < n; ++i) g[i] = g[i] || u[i];
                return g;
            }
        }
        return V(n, 0);
    }
};

} // namespace detail

// Low-level entry point over a pointer word: positions word[0..n), cycle
// starting at cyc_begin (== n for a finite word). Lets bulk callers reuse
// interned atom sets without copying.
inline bool eval_ltl_word(const AtomSet* const* word, int n, int cyc_begin, const LtlPtr& f) {
    if (n <= 0 || cyc_begin < 0 || cyc_begin > n) throw Error("eval_ltl_word: bad bounds");
    if (n <= 64) {
        detail::MaskEval64 ev{n, cyc_begin, word};
        return ev.bit(ev.eval(f), 0);
    }
    detail::MaskEvalWide ev{n, cyc_begin, word};
    return ev.eval(f)[0] != 0;
}

// Direct suffix semantics on a finite word. The word must be nonempty.
inline bool eval_ltl_finite(const std::vector<AtomSet>& word, const LtlPtr& f) {
    if (word.empty()) throw Error("eval_ltl_finite: empty word");
    int n = static_cast<int>(word.size());
    if (n <= 64) {
        const AtomSet* ptrs[64];
        for (int i = 0; i < n; ++i) ptrs[i] = &word[i];
        detail::MaskEval64 ev{n, n, ptrs};
        return ev.bit(ev.eval(f), 0);
    }
    std::vector<const AtomSet*> ptrs(n);
    for (int i = 0; i < n; ++i) ptrs[i] = &word[i];
    detail::MaskEvalWide ev{n, n, ptrs.data()};
    return ev.eval(f)[0] != 0;
}

// Direct semantics on the ultimately periodic word prefix.cycle^omega.
// The cycle must be nonempty.
inline bool eval_ltl_lasso(const std::vector<AtomSet>& prefix, const std::vector<AtomSet>& cycle,
                           const LtlPtr& f) {
    if (cycle.empty()) throw Error("eval_ltl_lasso: empty cycle");
    int n = static_cast<int>(prefix.size() + cycle.size());
    int cb = static_cast<int>(prefix.size());
    if (n <= 64) {
        const AtomSet* ptrs[64];
        for (int i = 0; i < cb; ++i) ptrs[i] = &prefix[i];
        for (int i = cb; i < n; ++i) ptrs[i] = &cycle[i - cb];
        detail::MaskEval64 ev{n, cb, ptrs};
        return ev.bit(ev.eval(f), 0);
    }
    std::vector<const AtomSet*> ptrs(n);
    for (int i = 0; i < cb; ++i) ptrs[i] = &prefix[i];
    for (int i = cb; i < n; ++i) ptrs[i] = &cycle[i - cb];
    detail::MaskEvalWide ev{n, cb, ptrs.data()};
    return ev.eval(f)[0] != 0;
}

} // namespace retlc
