#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "retlc/errors.hpp"

namespace retlc {

// ---------------------------------------------------------------------------
// LTL without the next-state operator. W is kept in the public AST; desugar()
// rewrites it away.
// ---------------------------------------------------------------------------

struct Ltl;
using LtlPtr = std::shared_ptr<const Ltl>;

struct Ltl {
    enum Kind { True, False, Atom, Not, And, Or, Implies, F, G, U, W };

    Kind kind;
    std::string atom; // Kind::Atom only
    LtlPtr a, b;      // unary: a; binary: a, b (U/W: a = psi, b = phi as in "psi U phi")

    Ltl(Kind k, std::string at, LtlPtr x, LtlPtr y)
        : kind(k), atom(std::move(at)), a(std::move(x)), b(std::move(y)) {}
};

namespace ltl {

inline LtlPtr make(Ltl::Kind k, LtlPtr a = nullptr, LtlPtr b = nullptr) {
    return std::make_shared<Ltl>(k, std::string(), std::move(a), std::move(b));
}
inline LtlPtr tt() { return make(Ltl::True); }
inline LtlPtr ff() { return make(Ltl::False); }
inline LtlPtr atom(std::string name) {
    return std::make_shared<Ltl>(Ltl::Atom, std::move(name), nullptr, nullptr);
}
inline LtlPtr negate(LtlPtr x) { return make(Ltl::Not, std::move(x)); }
inline LtlPtr conj(LtlPtr x, LtlPtr y) { return make(Ltl::And, std::move(x), std::move(y)); }
inline LtlPtr disj(LtlPtr x, LtlPtr y) { return make(Ltl::Or, std::move(x), std::move(y)); }
inline LtlPtr implies(LtlPtr x, LtlPtr y) { return make(Ltl::Implies, std::move(x), std::move(y)); }
inline LtlPtr finally(LtlPtr x) { return make(Ltl::F, std::move(x)); }
inline LtlPtr globally(LtlPtr x) { return make(Ltl::G, std::move(x)); }
inline LtlPtr until(LtlPtr psi, LtlPtr phi) { return make(Ltl::U, std::move(psi), std::move(phi)); }
inline LtlPtr weak_until(LtlPtr psi, LtlPtr phi) { return make(Ltl::W, std::move(psi), std::move(phi)); }

} // namespace ltl

inline bool ltl_equal(const LtlPtr& x, const LtlPtr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->atom != y->atom) return false;
    return ltl_equal(x->a, y->a) && ltl_equal(x->b, y->b);
}

inline void collect_atoms(const LtlPtr& f, std::set<std::string>& out) {
    if (!f) return;
    if (f->kind == Ltl::Atom) out.insert(f->atom);
    collect_atoms(f->a, out);
    collect_atoms(f->b, out);
}

inline std::string to_string(const LtlPtr& f) {
    switch (f->kind) {
        case Ltl::True: return "true";
        case Ltl::False: return "false";
        case Ltl::Atom: return f->atom;
        case Ltl::Not: return "!" + to_string(f->a);
        case Ltl::And: return "(" + to_string(f->a) + " & " + to_string(f->b) + ")";
        case Ltl::Or: return "(" + to_string(f->a) + " | " + to_string(f->b) + ")";
        case Ltl::Implies: return "(" + to_string(f->a) + " -> " + to_string(f->b) + ")";
        case Ltl::F: return "F " + to_string(f->a);
        case Ltl::G: return "G " + to_string(f->a);
        case Ltl::U: return "(" + to_string(f->a) + " U " + to_string(f->b) + ")";
        case Ltl::W: return "(" + to_string(f->a) + " W " + to_string(f->b) + ")";
    }
    return "?";
}

// Rewrites W as G/U/Or and Implies as Not/Or; everything else is kept.
inline LtlPtr desugar(const LtlPtr& f) {
    using namespace ltl;
    switch (f->kind) {
        case Ltl::True:
        case Ltl::False:
        case Ltl::Atom: return f;
        case Ltl::Not: return negate(desugar(f->a));
        case Ltl::And: return conj(desugar(f->a), desugar(f->b));
        case Ltl::Or: return disj(desugar(f->a), desugar(f->b));
        case Ltl::Implies: return disj(negate(desugar(f->a)), desugar(f->b));
        case Ltl::F: return finally(desugar(f->a));
        case Ltl::G: return globally(desugar(f->a));
        case Ltl::U: return until(desugar(f->a), desugar(f->b));
        case Ltl::W: {
            LtlPtr psi = desugar(f->a), phi = desugar(f->b);
            return disj(globally(psi), until(psi, phi));
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// CTL (state formulas).
// ---------------------------------------------------------------------------

struct Ctl;
using CtlPtr = std::shared_ptr<const Ctl>;

struct Ctl {
    enum Kind { True, False, Atom, Not, And, Or, Implies, EX, AX, EF, AF, EG, AG, EU, AU };

    Kind kind;
    std::string atom;
    CtlPtr a, b; // EU/AU: a = psi, b = phi as in "E psi U phi"

    Ctl(Kind k, std::string at, CtlPtr x, CtlPtr y)
        : kind(k), atom(std::move(at)), a(std::move(x)), b(std::move(y)) {}
};

namespace ctl {

inline CtlPtr make(Ctl::Kind k, CtlPtr a = nullptr, CtlPtr b = nullptr) {
    return std::make_shared<Ctl>(k, std::string(), std::move(a), std::move(b));
}
inline CtlPtr atom(std::string name) {
    return std::make_shared<Ctl>(Ctl::Atom, std::move(name), nullptr, nullptr);
}

} // namespace ctl

inline std::string to_string(const CtlPtr& f) {
    switch (f->kind) {
        case Ctl::True: return "true";
        case Ctl::False: return "false";
        case Ctl::Atom: return f->atom;
        case Ctl::Not: return "!" + to_string(f->a);
        case Ctl::And: return "(" + to_string(f->a) + " & " + to_string(f->b) + ")";
        case Ctl::Or: return "(" + to_string(f->a) + " | " + to_string(f->b) + ")";
        case Ctl::Implies: return "(" + to_string(f->a) + " -> " + to_string(f->b) + ")";
        case Ctl::EX: return "EX " + to_string(f->a);
        case Ctl::AX: return "AX " + to_string(f->a);
        case Ctl::EF: return "EF " + to_string(f->a);
        case Ctl::AF: return "AF " + to_string(f->a);
        case Ctl::EG: return "EG " + to_string(f->a);
        case Ctl::AG: return "AG " + to_string(f->a);
        case Ctl::EU: return "E[" + to_string(f->a) + " U " + to_string(f->b) + "]";
        case Ctl::AU: return "A[" + to_string(f->a) + " U " + to_string(f->b) + "]";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parser. Shared tokenizer; precedence (tightest first):
//   ! F G EX AX EF AF EG AG (unary)  >  U W (right-assoc)  >  &  >  |  >  ->
// ---------------------------------------------------------------------------

namespace detail {

struct FormulaLexer {
    std::string text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    struct Tok {
        enum Type { Ident, LPar, RPar, LBracket, RBracket, Bang, Amp, Pipe, Arrow, End } type;
        std::string ident;
        int line, col;
    };

    explicit FormulaLexer(std::string t) : text(std::move(t)) { advance(); }

    Tok cur;

    // true iff the token after cur is '[' (used to tell the CTL path
    // quantifiers E/A apart from atoms spelled E or A)
    bool next_is_lbracket() {
        std::size_t save_pos = pos;
        int save_line = line, save_col = col;
        Tok save_cur = cur;
        advance();
        bool is = cur.type == Tok::LBracket;
        pos = save_pos;
        line = save_line;
        col = save_col;
        cur = save_cur;
        return is;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur.line, cur.col); }

    void advance() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') { // comment to end of line
                while (pos < text.size() && text[pos] != '\n') ++pos;
                continue;
            }
            if (c == '\n') { ++pos; ++line; col = 1; continue; }
            if (std::isspace(static_cast<unsigned char>(c))) { ++pos; ++col; continue; }
            break;
        }
        cur.line = line;
        cur.col = col;
        if (pos >= text.size()) { cur.type = Tok::End; return; }
        char c = text[pos];
        auto one = [&](Tok::Type t) { cur.type = t; ++pos; ++col; };
        switch (c) {
            case '(': one(Tok::LPar); return;
            case ')': one(Tok::RPar); return;
            case '[': one(Tok::LBracket); return;
            case ']': one(Tok::RBracket); return;
            case '!': one(Tok::Bang); return;
            case '&': one(Tok::Amp); return;
            case '|': one(Tok::Pipe); return;
            case '-':
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    cur.type = Tok::Arrow;
                    pos += 2; col += 2;
                    return;
                }
                throw ParseError("unexpected '-'", line, col);
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                ++pos; ++col;
            }
            cur.type = Tok::Ident;
            cur.ident = text.substr(start, pos - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
};

// LTL grammar over the shared lexer.
class LtlParser {
public:
    explicit LtlParser(const std::string& text) : lx_(text) {}

    LtlPtr parse() {
        LtlPtr f = implies_level();
        if (lx_.cur.type != FormulaLexer::Tok::End) lx_.fail("trailing input after formula");
        return f;
    }

private:
    FormulaLexer lx_;

    bool eat_ident(const char* kw) {
        if (lx_.cur.type == FormulaLexer::Tok::Ident && lx_.cur.ident == kw) {
            lx_.advance();
            return true;
        }
        return false;
    }

    LtlPtr implies_level() {
        LtlPtr lhs = or_level();
        if (lx_.cur.type == FormulaLexer::Tok::Arrow) {
            lx_.advance();
            return ltl::implies(lhs, implies_level()); // right-assoc
        }
        return lhs;
    }

    LtlPtr or_level() {
        LtlPtr lhs = and_level();
        while (lx_.cur.type == FormulaLexer::Tok::Pipe) {
            lx_.advance();
            lhs = ltl::disj(lhs, and_level());
        }
        return lhs;
    }

    LtlPtr and_level() {
        LtlPtr lhs = until_level();
        while (lx_.cur.type == FormulaLexer::Tok::Amp) {
            lx_.advance();
            lhs = ltl::conj(lhs, until_level());
        }
        return lhs;
    }

    LtlPtr until_level() {
        LtlPtr lhs = unary_level();
        if (lx_.cur.type == FormulaLexer::Tok::Ident &&
            (lx_.cur.ident == "U" || lx_.cur.ident == "W")) {
            bool weak = lx_.cur.ident == "W";
            lx_.advance();
            LtlPtr rhs = until_level(); // right-assoc
            return weak ? ltl::weak_until(lhs, rhs) : ltl::until(lhs, rhs);
        }
        return lhs;
    }

    LtlPtr unary_level() {
        if (lx_.cur.type == FormulaLexer::Tok::Bang) {
            lx_.advance();
            return ltl::negate(unary_level());
        }
        if (lx_.cur.type == FormulaLexer::Tok::Ident) {
            if (lx_.cur.ident == "X")
                throw XNotSupported(lx_.cur.line, lx_.cur.col);
            if (lx_.cur.ident == "F") { lx_.advance(); return ltl::finally(unary_level()); }
            if (lx_.cur.ident == "G") { lx_.advance(); return ltl::globally(unary_level()); }
        }
        return primary();
    }

    LtlPtr primary() {
        using Tok = FormulaLexer::Tok;
        if (lx_.cur.type == Tok::LPar) {
            lx_.advance();
            LtlPtr f = implies_level();
            if (lx_.cur.type != Tok::RPar) lx_.fail("expected ')'");
            lx_.advance();
            return f;
        }
        if (lx_.cur.type == Tok::Ident) {
            if (eat_ident("true")) return ltl::tt();
            if (eat_ident("false")) return ltl::ff();
            if (lx_.cur.ident == "U" || lx_.cur.ident == "W") lx_.fail("misplaced temporal operator");
            if (lx_.cur.ident == "X") throw XNotSupported(lx_.cur.line, lx_.cur.col);
            std::string name = lx_.cur.ident;
            lx_.advance();
            return ltl::atom(name);
        }
        lx_.fail("expected formula");
    }
};

class CtlParser {
public:
    explicit CtlParser(const std::string& text) : lx_(text) {}

    CtlPtr parse() {
        CtlPtr f = implies_level();
        if (lx_.cur.type != FormulaLexer::Tok::End) lx_.fail("trailing input after formula");
        return f;
    }

private:
    FormulaLexer lx_;

    bool is_kw(const char* kw) const {
        return lx_.cur.type == FormulaLexer::Tok::Ident && lx_.cur.ident == kw;
    }

    CtlPtr implies_level() {
        CtlPtr lhs = or_level();
        if (lx_.cur.type == FormulaLexer::Tok::Arrow) {
            lx_.advance();
            return ctl::make(Ctl::Implies, lhs, implies_level());
        }
        return lhs;
    }

    CtlPtr or_level() {
        CtlPtr lhs = and_level();
        while (lx_.cur.type == FormulaLexer::Tok::Pipe) {
            lx_.advance();
            lhs = ctl::make(Ctl::Or, lhs, and_level());
        }
        return lhs;
    }

    CtlPtr and_level() {
        CtlPtr lhs = unary_level();
        while (lx_.cur.type == FormulaLexer::Tok::Amp) {
            lx_.advance();
            lhs = ctl::make(Ctl::And, lhs, unary_level());
        }
        return lhs;
    }

    CtlPtr unary_level() {
        using Tok = FormulaLexer::Tok;
        if (lx_.cur.type == Tok::Bang) {
            lx_.advance();
            return ctl::make(Ctl::Not, unary_level());
        }
        if (lx_.cur.type == Tok::Ident) {
            static const std::pair<const char*, Ctl::Kind> unary[] = {
                {"EX", Ctl::EX}, {"AX", Ctl::AX}, {"EF", Ctl::EF},
                {"AF", Ctl::AF}, {"EG", Ctl::EG}, {"AG", Ctl::AG},
            };
            for (auto& [kw, kind] : unary) {
                if (is_kw(kw)) {
                    lx_.advance();
                    return ctl::make(kind, unary_level());
                }
            }
            if ((is_kw("E") || is_kw("A")) && lx_.next_is_lbracket()) {
                bool all = is_kw("A");
                lx_.advance();
                if (lx_.cur.type != Tok::LBracket) lx_.fail("expected '[' after path quantifier");
                lx_.advance();
                CtlPtr psi = implies_level();
                if (!is_kw("U")) lx_.fail("expected 'U' in quantified until");
                lx_.advance();
                CtlPtr phi = implies_level();
                if (lx_.cur.type != Tok::RBracket) lx_.fail("expected ']'");
                lx_.advance();
                return ctl::make(all ? Ctl::AU : Ctl::EU, psi, phi);
            }
        }
        return primary();
    }

    CtlPtr primary() {
        using Tok = FormulaLexer::Tok;
        if (lx_.cur.type == Tok::LPar) {
            lx_.advance();
            CtlPtr f = implies_level();
            if (lx_.cur.type != Tok::RPar) lx_.fail("expected ')'");
            lx_.advance();
            return f;
        }
        if (lx_.cur.type == Tok::Ident) {
            if (is_kw("true")) { lx_.advance(); return ctl::make(Ctl::True); }
            if (is_kw("false")) { lx_.advance(); return ctl::make(Ctl::False); }
            std::string name = lx_.cur.ident;
            lx_.advance();
            return ctl::atom(name);
        }
        lx_.fail("expected formula");
    }
};

} // namespace detail

inline LtlPtr parse_ltl(const std::string& text) { return detail::LtlParser(text).parse(); }
inline CtlPtr parse_ctl(const std::string& text) { return detail::CtlParser(text).parse(); }

// Reads a formula file: one formula per line, '#' comments, blank lines skipped.
inline std::vector<std::string> split_formula_lines(const std::string& contents) {
    std::vector<std::string> formulas;
    std::string line;
    auto flush = [&] {
        std::string stripped = line.substr(0, line.find('#'));
        std::size_t a = stripped.find_first_not_of(" \t\r");
        std::size_t b = stripped.find_last_not_of(" \t\r");
        if (a != std::string::npos) formulas.push_back(stripped.substr(a, b - a + 1));
        line.clear();
    };
    for (char c : contents) {
        if (c == '\n') { flush(); continue; }
        line.push_back(c);
    }
    flush();
    return formulas;
}

} // namespace retlc
