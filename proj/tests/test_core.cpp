#include "doctest.h"

#include <functional>
#include <set>

#include "retlc/io.hpp"
#include "retlc/ltsc.hpp"
#include "test_util.hpp"

using namespace retlc;

namespace {

Ltsc vending_machine() {
    Ltsc m;
    m.states = {"VM", "p.VM"};
    m.initial = 0;
    m.transitions = {{0, 0, 1, ActionLabel::visible("c")}, {1, 1, 0, ActionLabel::visible("p")}};
    m.finish();
    return m;
}

// beer structure D: nobody is served twice in a row, single barman
Ltsc beer_d() {
    Ltsc m;
    m.states = {"fresh", "A", "B", "C"};
    m.initial = 0;
    auto vis = [](const char* s) { return ActionLabel::visible(s); };
    m.transitions = {
        {0, 0, 1, vis("A")}, {1, 0, 2, vis("B")}, {2, 0, 3, vis("C")},
        {3, 1, 2, vis("B")}, {4, 1, 3, vis("C")},
        {5, 2, 1, vis("A")}, {6, 2, 3, vis("C")},
        {7, 3, 1, vis("A")}, {8, 3, 2, vis("B")},
    };
    m.finish();
    return m;
}

} // namespace

TEST_CASE("dv translation of the vending machine") {
    Ltsc m = vending_machine();
    KripkeStructure k = dv_translate(m);
    CHECK(k.n_states == 4);
    // one midpoint per visible transition, labelled with its action
    REQUIRE(k.trans_pos[0] >= 2);
    REQUIRE(k.trans_pos[1] >= 2);
    CHECK(k.labels[k.trans_pos[0]] == std::set<std::string>{"c"});
    CHECK(k.labels[k.trans_pos[1]] == std::set<std::string>{"p"});
    CHECK(k.labels[0].empty());
    CHECK(k.labels[1].empty());
    // edges s0 -> <c> -> s1 -> <p> -> s0
    std::set<std::pair<int, int>> edges;
    for (auto& e : k.edges) edges.insert({e.from, e.to});
    CHECK(edges == std::set<std::pair<int, int>>{{0, k.trans_pos[0]},
                                                 {k.trans_pos[0], 1},
                                                 {1, k.trans_pos[1]},
                                                 {k.trans_pos[1], 0}});
    // origin is total and injective
    std::set<std::pair<bool, int>> origins;
    for (auto& o : k.origin) origins.insert({o.is_transition, o.index});
    CHECK(origins.size() == static_cast<std::size_t>(k.n_states));
}

TEST_CASE("dv translation of a tau transition and of a trivial system") {
    Ltsc m;
    m.states = {"s", "s'"};
    m.initial = 0;
    m.transitions = {{0, 0, 1, ActionLabel::tau()}};
    m.finish();
    KripkeStructure k = dv_translate(m);
    CHECK(k.n_states == 2);
    REQUIRE(k.edges.size() == 1);
    CHECK(k.edges[0].from == 0);
    CHECK(k.edges[0].to == 1);
    CHECK(k.labels[0].empty());
    CHECK(k.labels[1].empty());

    Ltsc single;
    single.states = {"s"};
    single.initial = 0;
    single.finish();
    KripkeStructure k1 = dv_translate(single);
    CHECK(k1.n_states == 1);
    CHECK(k1.edges.empty());
}

TEST_CASE("ltsc axiom validation") {
    SUBCASE("reflexive concurrency pair is reported") {
        Ltsc m = vending_machine();
        m.concurrency_pairs.push_back({0, 0});
        m.finish();
        LtscValidation rep = validate_ltsc(m, 3);
        REQUIRE(rep.reflexive.size() == 1);
        CHECK(rep.reflexive[0] == 0);
    }

    SUBCASE("closure violation on a fork of declared-concurrent transitions") {
        // a and b both leave s0, declared concurrent, but b's target offers
        // no a-labelled continuation
        Ltsc m;
        m.states = {"s0", "s1", "s2"};
        m.initial = 0;
        m.transitions = {{0, 0, 1, ActionLabel::visible("a")},
                         {1, 0, 2, ActionLabel::visible("b")}};
        m.concurrency_pairs = {{0, 1}};
        m.finish();
        LtscValidation rep = validate_ltsc(m, 3);
        // both directions fail: a after the b-step, and b after the a-step
        REQUIRE(rep.closure.size() == 2);
        CHECK(rep.closure[0].transition == 0);
        CHECK(rep.closure[0].path.steps == std::vector<int>{1});
        CHECK(rep.closure[1].transition == 1);
        CHECK(rep.closure[1].path.steps == std::vector<int>{0});
    }

    SUBCASE("a sequential chain with an empty concurrency relation passes") {
        Ltsc m;
        m.states = {"s0", "s1", "s2"};
        m.initial = 0;
        m.transitions = {{0, 0, 1, ActionLabel::visible("a")},
                         {1, 1, 2, ActionLabel::visible("b")}};
        m.finish();
        CHECK(validate_ltsc(m, 3).ok());
    }

    SUBCASE("the repaired fork passes") {
        // both transitions still have a variant after the concurrent step
        Ltsc m;
        m.states = {"s0", "s1", "s2", "s3", "s4"};
        m.initial = 0;
        m.transitions = {{0, 0, 1, ActionLabel::visible("a")},
                         {1, 0, 2, ActionLabel::visible("b")},
                         {2, 2, 3, ActionLabel::visible("a")},
                         {3, 1, 4, ActionLabel::visible("b")}};
        m.concurrency_pairs = {{0, 1}, {1, 2}, {0, 3}};
        m.finish();
        CHECK(validate_ltsc(m, 3).ok());
    }
}

TEST_CASE("lasso enumeration") {
    SUBCASE("vending machine, prefix 0 cycle 2") {
        Ltsc m = vending_machine();
        std::vector<Lasso> lassos;
        int finite = 0;
        enumerate_lassos(m, 0, 2, [&](const Lasso& l) {
            if (l.is_finite_path()) ++finite;
            else lassos.push_back(l);
            return true;
        });
        CHECK(finite == 1); // the empty path at VM
        REQUIRE(lassos.size() == 1);
        CHECK(lassos[0].prefix.steps.empty());
        CHECK(lassos[0].cycle == std::vector<int>{0, 1});
    }

    SUBCASE("single state without transitions") {
        Ltsc m;
        m.states = {"s"};
        m.initial = 0;
        m.finish();
        int finite = 0, lassos = 0;
        enumerate_lassos(m, 2, 2, [&](const Lasso& l) {
            l.is_finite_path() ? ++finite : ++lassos;
            return true;
        });
        CHECK(finite == 1);
        CHECK(lassos == 0);
    }

    SUBCASE("beer structure D includes the Alice/Cameron alternation") {
        Ltsc m = beer_d();
        bool found = false;
        enumerate_lassos(m, 1, 2, [&](const Lasso& l) {
            if (!l.is_finite_path() && l.prefix.steps == std::vector<int>{0} &&
                l.cycle == std::vector<int>{4, 7})
                found = true;
            return true;
        });
        CHECK(found);
    }

    SUBCASE("every yielded lasso is well-formed") {
        testutil::Rng rng(23);
        for (int i = 0; i < 30; ++i) {
            Ltsc m = testutil::random_ltsc(rng);
            enumerate_lassos(m, 3, 3, [&](const Lasso& l) {
                CHECK(l.well_formed(m));
                return true;
            });
        }
    }
}

TEST_CASE("dv translation induces a path bijection") {
    testutil::Rng rng(29);
    for (int iter = 0; iter < 40; ++iter) {
        Ltsc m = testutil::random_ltsc(rng, 4, 6);
        // drop parallel tau transitions between identical endpoints: the
        // Kripke structure cannot tell them apart
        {
            std::set<std::pair<int, int>> tau_seen;
            Ltsc clean;
            clean.states = m.states;
            clean.initial = m.initial;
            for (const Transition& t : m.transitions) {
                if (t.label.is_tau() && !tau_seen.insert({t.source, t.target}).second) continue;
                int id = static_cast<int>(clean.transitions.size());
                clean.transitions.push_back({id, t.source, t.target, t.label});
            }
            clean.finish();
            m = std::move(clean);
        }
        KripkeStructure k = dv_translate(m);

        // LTS paths with at most 3 transitions, flattened to position runs
        std::set<std::vector<int>> lts_runs;
        std::function<void(int, std::vector<int>&, int)> walk = [&](int at, std::vector<int>& run,
                                                                    int depth) {
            lts_runs.insert(run);
            if (depth == 3) return;
            for (int t : m.out[at]) {
                std::size_t mark = run.size();
                if (k.trans_pos[t] >= 0) run.push_back(k.trans_pos[t]);
                run.push_back(m.transitions[t].target);
                walk(m.transitions[t].target, run, depth + 1);
                run.resize(mark);
            }
        };
        std::vector<int> run0 = {m.initial};
        walk(m.initial, run0, 0);

        // Kripke paths ending at state positions, consuming at most 3
        // transitions
        std::set<std::vector<int>> kripke_runs;
        std::function<void(int, std::vector<int>&, int)> kwalk = [&](int pos, std::vector<int>& run,
                                                                     int used) {
            if (pos < m.num_states()) kripke_runs.insert(run);
            if (used == 3 && pos < m.num_states()) return;
            for (int e : k.out_edges[pos]) {
                const KripkeEdge& ke = k.edges[e];
                int nused = used + (ke.taken >= 0 ? 1 : 0);
                if (nused > 3) continue;
                run.push_back(ke.to);
                kwalk(ke.to, run, nused);
                run.pop_back();
            }
        };
        std::vector<int> krun0 = {m.initial};
        kwalk(m.initial, krun0, 0);

        CHECK(lts_runs == kripke_runs);
    }
}

TEST_CASE("explicit-LTS json round trip and validation") {
    Ltsc m = beer_d();
    m.concurrency_pairs = {{0, 3}};
    m.finish();
    Ltsc back = load_lts_json(save_lts_json(m));
    CHECK(back.states == m.states);
    CHECK(back.initial == m.initial);
    REQUIRE(back.num_transitions() == m.num_transitions());
    for (int i = 0; i < m.num_transitions(); ++i) {
        CHECK(back.transitions[i].source == m.transitions[i].source);
        CHECK(back.transitions[i].target == m.transitions[i].target);
        CHECK(back.transitions[i].label == m.transitions[i].label);
    }
    CHECK(back.concurrency_pairs == m.concurrency_pairs);

    CHECK_THROWS_AS(load_lts_json(R"({"states":["a"],"initial":"a",
        "transitions":[{"id":0,"from":"a","to":"a","label":"x"}],
        "concurrency":[[0,0]]})"),
                    Error);
    CHECK_THROWS_AS(load_lts_json(R"({"states":["a"],"initial":"b","transitions":[]})"), Error);
}
