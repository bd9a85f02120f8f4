#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "retlc/action.hpp"
#include "retlc/errors.hpp"
#include "retlc/ltsc.hpp"

namespace retlc {

// ---------------------------------------------------------------------------
// CCS terms, guarded-choice fragment:
//   sum of action-prefixed terms (empty sum = 0), parallel composition,
//   restriction \{a,...}, relabelling [new/old,...], agent identifiers.
// ---------------------------------------------------------------------------

struct CcsAction {
    enum Kind { Name, CoName, Tau } kind = Tau;
    std::string name; // empty for tau

    static CcsAction tau() { return {Tau, ""}; }
    static CcsAction plain(std::string n) { return {Name, std::move(n)}; }
    static CcsAction co(std::string n) { return {CoName, std::move(n)}; }

    CcsAction complement() const {
        if (kind == Name) return {CoName, name};
        if (kind == CoName) return {Name, name};
        return *this;
    }

    ActionLabel to_label() const {
        if (kind == Tau) return ActionLabel::tau();
        if (kind == Name) return ActionLabel::visible(name);
        return ActionLabel::visible("'" + name);
    }

    std::string to_string() const {
        if (kind == Tau) return "tau";
        if (kind == Name) return name;
        return "'" + name;
    }

    friend bool operator==(const CcsAction& a, const CcsAction& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator<(const CcsAction& a, const CcsAction& b) {
        return std::tie(a.kind, a.name) < std::tie(b.kind, b.name);
    }
};

struct CcsProcess;
using CcsRef = std::shared_ptr<const CcsProcess>;

struct CcsProcess {
    enum Kind { Sum, Par, Restrict, Relabel, Ident } kind = Sum;

    // Sum: summands (empty = nil process 0)
    std::vector<std::pair<CcsAction, CcsRef>> summands;
    // Par
    CcsRef left, right;
    // Restrict / Relabel
    CcsRef body;
    std::set<std::string> restricted;                       // Restrict
    std::vector<std::pair<std::string, std::string>> renames; // Relabel: (new, old)
    // Ident
    std::string ident;
};

namespace ccs {

inline CcsRef nil() {
    auto p = std::make_shared<CcsProcess>();
    p->kind = CcsProcess::Sum;
    return p;
}
inline CcsRef sum(std::vector<std::pair<CcsAction, CcsRef>> summands) {
    auto p = std::make_shared<CcsProcess>();
    p->kind = CcsProcess::Sum;
    p->summands = std::move(summands);
    return p;
}
inline CcsRef prefix(CcsAction a, CcsRef cont) { return sum({{std::move(a), std::move(cont)}}); }
inline CcsRef par(CcsRef l, CcsRef r) {
    auto p = std::make_shared<CcsProcess>();
    p->kind = CcsProcess::Par;
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
}
inline CcsRef restrict_names(CcsRef body, std::set<std::string> names) {
    auto p = std::make_shared<CcsProcess>();
    p->kind = CcsProcess::Restrict;
    p->body = std::move(body);
    p->restricted = std::move(names);
    return p;
}
inline CcsRef relabel(CcsRef body, std::vector<std::pair<std::string, std::string>> renames) {
    auto p = std::make_shared<CcsProcess>();
    p->kind = CcsProcess::Relabel;
    p->body = std::move(body);
    p->renames = std::move(renames);
    return p;
}
inline CcsRef ident(std::string name) {
    auto p = std::make_shared<CcsProcess>();
    p->kind = CcsProcess::Ident;
    p->ident = std::move(name);
    return p;
}

} // namespace ccs

// Canonical printing; doubles as the syntactic state identity.
inline std::string to_string(const CcsRef& p) {
    switch (p->kind) {
        case CcsProcess::Sum: {
            if (p->summands.empty()) return "0";
            std::string s;
            for (std::size_t i = 0; i < p->summands.size(); ++i) {
                if (i) s += " + ";
                const auto& [a, cont] = p->summands[i];
                std::string c = to_string(cont);
                bool paren = cont->kind == CcsProcess::Par ||
                             (cont->kind == CcsProcess::Sum && cont->summands.size() > 1);
                s += a.to_string() + "." + (paren ? "(" + c + ")" : c);
            }
            return s;
        }
        case CcsProcess::Par: {
            auto wrap = [](const CcsRef& q) {
                std::string s = to_string(q);
                bool paren = q->kind == CcsProcess::Par ||
                             (q->kind == CcsProcess::Sum && q->summands.size() > 1);
                return paren ? "(" + s + ")" : s;
            };
            return wrap(p->left) + " | " + wrap(p->right);
        }
        case CcsProcess::Restrict: {
            std::string s = to_string(p->body);
            bool paren = p->body->kind != CcsProcess::Ident;
            std::string names;
            for (auto& n : p->restricted) {
                if (!names.empty()) names += ",";
                names += n;
            }
            return (paren ? "(" + s + ")" : s) + "\\{" + names + "}";
        }
        case CcsProcess::Relabel: {
            std::string s = to_string(p->body);
            bool paren = p->body->kind != CcsProcess::Ident;
            std::string rs;
            for (auto& [nw, old] : p->renames) {
                if (!rs.empty()) rs += ",";
                rs += nw + "/" + old;
            }
            return (paren ? "(" + s + ")" : s) + "[" + rs + "]";
        }
        case CcsProcess::Ident: return p->ident;
    }
    return "?";
}

using CcsDefinitions = std::map<std::string, CcsRef>;

struct CcsProgram {
    CcsDefinitions defs;
    std::string main_name; // definition to check, empty if main_expr set
    CcsRef main_expr;      // explicit main expression, may be null

    CcsRef entry() const {
        if (main_expr) return main_expr;
        std::string name = main_name;
        // follow bare-identifier definitions (main = F;) to the named agent
        std::set<std::string> visited;
        for (;;) {
            auto it = defs.find(name);
            if (it == defs.end()) throw UndefinedIdentifier(name);
            if (it->second->kind != CcsProcess::Ident || !visited.insert(name).second) break;
            name = it->second->ident;
        }
        return ccs::ident(name);
    }
};

// ---------------------------------------------------------------------------
// Parser. Grammar (loosest to tightest): +  |  action-prefix  postfix(\L [f])
// Co-names are written 'a, tau is the keyword tau, definitions are
// "Name = expr;" lines, comments run from '#' to end of line.
// ---------------------------------------------------------------------------

namespace detail {

class CcsParser {
public:
    explicit CcsParser(std::string text) : text_(std::move(text)) { skip(); }

    CcsProgram parse_program() {
        CcsProgram prog;
        while (!at_end()) {
            int l = line_, c = col_;
            std::string name = parse_ident_token();
            expect('=');
            CcsRef body = parse_sum();
            expect(';');
            if (prog.defs.count(name))
                throw ParseError("duplicate definition of '" + name + "'", l, c);
            prog.defs[name] = body;
            skip();
        }
        if (prog.defs.count("main")) prog.main_name = "main";
        return prog;
    }

    CcsRef parse_expression() {
        CcsRef e = parse_sum();
        if (!at_end()) throw ParseError("trailing input after expression", line_, col_);
        return e;
    }

private:
    std::string text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void bump() {
        if (text_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    void skip() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "'", line_, col_);
        bump();
        skip();
    }

    bool eat(char c) {
        if (peek() == c) {
            bump();
            skip();
            return true;
        }
        return false;
    }

    std::string parse_ident_token() {
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
            throw ParseError("expected identifier", line_, col_);
        std::string s;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            s.push_back(peek());
            bump();
        }
        skip();
        return s;
    }

    // sum := par ('+' par)*; every operand of '+' must be action-prefixed
    CcsRef parse_sum() {
        int l = line_, c = col_;
        CcsRef first = parse_par();
        if (peek() != '+') return first;
        std::vector<std::pair<CcsAction, CcsRef>> summands;
        // every '+' operand must be a single action-prefixed term
        auto absorb = [&](const CcsRef& e, int el, int ec) {
            if (e->kind != CcsProcess::Sum || e->summands.size() != 1)
                throw UnguardedChoice(el, ec);
            summands.push_back(e->summands.front());
        };
        absorb(first, l, c);
        while (eat('+')) {
            int ol = line_, oc = col_;
            CcsRef next = parse_par();
            absorb(next, ol, oc);
        }
        return ccs::sum(std::move(summands));
    }

    CcsRef parse_par() {
        CcsRef lhs = parse_prefix();
        while (eat('|')) {
            CcsRef rhs = parse_prefix();
            lhs = ccs::par(lhs, rhs);
        }
        return lhs;
    }

    // prefix := action '.' prefix | postfix
    CcsRef parse_prefix() {
        // co-name or tau or name followed by '.' is an action prefix
        if (peek() == '\'') {
            bump();
            std::string n = parse_ident_token();
            expect('.');
            return ccs::prefix(CcsAction::co(n), parse_prefix());
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            std::size_t save_pos = pos_;
            int save_line = line_, save_col = col_;
            std::string n = parse_ident_token();
            if (peek() == '.') {
                bump();
                skip();
                CcsAction a = (n == "tau") ? CcsAction::tau() : CcsAction::plain(n);
                return ccs::prefix(a, parse_prefix());
            }
            // plain agent identifier; rewind not needed, build postfix from it
            pos_ = save_pos; line_ = save_line; col_ = save_col;
            (void)n;
            return parse_postfix();
        }
        return parse_postfix();
    }

    CcsRef parse_postfix() {
        CcsRef e = parse_atom();
        for (;;) {
            if (peek() == '\\') {
                bump();
                skip();
                expect('{');
                std::set<std::string> names;
                if (peek() != '}') {
                    names.insert(parse_ident_token());
                    while (eat(',')) names.insert(parse_ident_token());
                }
                expect('}');
                e = ccs::restrict_names(e, std::move(names));
            } else if (peek() == '[') {
                bump();
                skip();
                std::vector<std::pair<std::string, std::string>> renames;
                if (peek() != ']') {
                    do {
                        std::string nw = parse_ident_token();
                        expect('/');
                        std::string old = parse_ident_token();
                        renames.push_back({nw, old});
                    } while (eat(','));
                }
                expect(']');
                e = ccs::relabel(e, std::move(renames));
            } else {
                return e;
            }
        }
    }

    CcsRef parse_atom() {
        if (eat('(')) {
            CcsRef e = parse_sum();
            expect(')');
            return e;
        }
        if (peek() == '0') {
            bump();
            skip();
            return ccs::nil();
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            std::string n = parse_ident_token();
            return ccs::ident(n);
        }
        throw ParseError("expected process expression", line_, col_);
    }
};

} // namespace detail

namespace detail {

// idents reachable without passing an action prefix; a definition reaching
// itself this way has unguarded recursion and no well-founded SOS derivation
inline void unguarded_idents(const CcsRef& p, std::set<std::string>& out) {
    switch (p->kind) {
        case CcsProcess::Sum: break; // prefixes guard their continuations
        case CcsProcess::Par:
            unguarded_idents(p->left, out);
            unguarded_idents(p->right, out);
            break;
        case CcsProcess::Restrict:
        case CcsProcess::Relabel:
            unguarded_idents(p->body, out);
            break;
        case CcsProcess::Ident:
            out.insert(p->ident);
            break;
    }
}

inline void check_guarded_recursion(const CcsDefinitions& defs) {
    for (auto& [name, body] : defs) {
        std::set<std::string> frontier, seen;
        unguarded_idents(body, frontier);
        while (!frontier.empty()) {
            std::string next = *frontier.begin();
            frontier.erase(frontier.begin());
            if (next == name)
                throw Error("unguarded recursion through agent '" + name + "'");
            if (!seen.insert(next).second) continue;
            auto it = defs.find(next);
            if (it != defs.end()) unguarded_idents(it->second, frontier);
        }
    }
}

} // namespace detail

inline CcsProgram parse_ccs(const std::string& text) {
    CcsProgram prog = detail::CcsParser(text).parse_program();
    detail::check_guarded_recursion(prog.defs);
    return prog;
}

inline CcsRef parse_ccs_expression(const std::string& text) {
    return detail::CcsParser(text).parse_expression();
}

// ---------------------------------------------------------------------------
// Structural operational semantics with component sets. A component is a
// string over {L,R} locating the parallel components that take part in a
// transition; a guarded-sum step carries the singleton {""}.
// ---------------------------------------------------------------------------

using ComponentSet = std::set<std::string>;

struct CcsStep {
    CcsAction action;
    ComponentSet components;
    CcsRef target;
};

inline ComponentSet prefix_components(char side, const ComponentSet& c) {
    ComponentSet out;
    for (auto& s : c) out.insert(std::string(1, side) + s);
    return out;
}

inline bool components_disjoint(const ComponentSet& a, const ComponentSet& b) {
    for (auto& x : a)
        if (b.count(x)) return false;
    return true;
}

inline std::vector<CcsStep> sos_step(const CcsRef& p, const CcsDefinitions& defs) {
    std::vector<CcsStep> out;
    switch (p->kind) {
        case CcsProcess::Sum: {
            for (auto& [a, cont] : p->summands) out.push_back({a, {""}, cont});
            break;
        }
        case CcsProcess::Par: {
            std::vector<CcsStep> ls = sos_step(p->left, defs);
            std::vector<CcsStep> rs = sos_step(p->right, defs);
            for (auto& s : ls)
                out.push_back({s.action, prefix_components('L', s.components),
                               ccs::par(s.target, p->right)});
            for (auto& l : ls) {
                if (l.action.kind == CcsAction::Tau) continue;
                for (auto& r : rs) {
                    if (!(r.action == l.action.complement())) continue;
                    ComponentSet comp = prefix_components('L', l.components);
                    ComponentSet rc = prefix_components('R', r.components);
                    comp.insert(rc.begin(), rc.end());
                    out.push_back({CcsAction::tau(), std::move(comp),
                                   ccs::par(l.target, r.target)});
                }
            }
            for (auto& s : rs)
                out.push_back({s.action, prefix_components('R', s.components),
                               ccs::par(p->left, s.target)});
            break;
        }
        case CcsProcess::Restrict: {
            for (auto& s : sos_step(p->body, defs)) {
                if (s.action.kind != CcsAction::Tau && p->restricted.count(s.action.name))
                    continue;
                out.push_back({s.action, s.components,
                               ccs::restrict_names(s.target, p->restricted)});
            }
            break;
        }
        case CcsProcess::Relabel: {
            for (auto& s : sos_step(p->body, defs)) {
                CcsAction a = s.action;
                if (a.kind != CcsAction::Tau) {
                    for (auto& [nw, old] : p->renames) {
                        if (a.name == old) {
                            a.name = nw;
                            break;
                        }
                    }
                }
                out.push_back({a, s.components, ccs::relabel(s.target, p->renames)});
            }
            break;
        }
        case CcsProcess::Ident: {
            auto it = defs.find(p->ident);
            if (it == defs.end()) throw UndefinedIdentifier(p->ident);
            out = sos_step(it->second, defs);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// BFS exploration into an LTSC. States are syntactically distinct terms (no
// normalisation); transitions are (source, action, components, target)
// quadruples with duplicate derivations collapsed; two transitions are
// concurrent iff their component sets are disjoint.
// ---------------------------------------------------------------------------

struct CcsExploration {
    Ltsc ltsc;
    std::vector<CcsRef> state_terms;          // state index -> term
    std::vector<ComponentSet> components;     // transition id -> component set
};

inline CcsExploration explore_ccs(const CcsRef& start, const CcsDefinitions& defs,
                                  std::size_t max_states = 100000) {
    if (max_states < 1) throw Error("explore_ccs: max_states must be >= 1");
    CcsExploration res;
    std::unordered_map<std::string, int> index;

    auto intern = [&](const CcsRef& term) {
        std::string key = to_string(term);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (res.state_terms.size() >= max_states) throw StateSpaceExceeded(max_states);
        int id = static_cast<int>(res.state_terms.size());
        index.emplace(std::move(key), id);
        res.state_terms.push_back(term);
        res.ltsc.states.push_back(to_string(term));
        return id;
    };

    intern(start);
    res.ltsc.initial = 0;

    for (std::size_t head = 0; head < res.state_terms.size(); ++head) {
        CcsRef term = res.state_terms[head];
        std::set<std::tuple<std::string, ComponentSet, std::string>> seen;
        for (const CcsStep& s : sos_step(term, defs)) {
            auto key = std::make_tuple(s.action.to_string(), s.components, to_string(s.target));
            if (!seen.insert(key).second) continue; // duplicate derivation
            int tgt = intern(s.target);
            int id = static_cast<int>(res.ltsc.transitions.size());
            res.ltsc.transitions.push_back({id, static_cast<int>(head), tgt, s.action.to_label()});
            res.components.push_back(s.components);
        }
    }

    int nt = res.ltsc.num_transitions();
    for (int a = 0; a < nt; ++a)
        for (int b = a + 1; b < nt; ++b)
            if (components_disjoint(res.components[a], res.components[b]))
                res.ltsc.concurrency_pairs.push_back({a, b});

    res.ltsc.finish();
    return res;
}

// Checks that every agent identifier reachable from the program entry has a
// defining equation (parse-time closedness).
inline void check_defined(const CcsRef& p, const CcsDefinitions& defs,
                          std::set<std::string>& seen) {
    switch (p->kind) {
        case CcsProcess::Sum:
            for (auto& [a, cont] : p->summands) check_defined(cont, defs, seen);
            break;
        case CcsProcess::Par:
            check_defined(p->left, defs, seen);
            check_defined(p->right, defs, seen);
            break;
        case CcsProcess::Restrict:
        case CcsProcess::Relabel:
            check_defined(p->body, defs, seen);
            break;
        case CcsProcess::Ident: {
            auto it = defs.find(p->ident);
            if (it == defs.end()) throw UndefinedIdentifier(p->ident);
            if (seen.insert(p->ident).second) check_defined(it->second, defs, seen);
            break;
        }
    }
}

} // namespace retlc
