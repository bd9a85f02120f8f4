#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "retlc/ccs.hpp"
#include "retlc/criteria.hpp"
#include "retlc/errors.hpp"
#include "retlc/ltsc.hpp"
#include "retlc/petri.hpp"

namespace retlc {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << contents;
}

// ---------------------------------------------------------------------------
// Explicit-LTS JSON:
//   {"states":[...], "initial":"s0",
//    "transitions":[{"id":0,"from":"s0","to":"s1","label":"c"}],
//    "concurrency":[[0,1],...]}
// Concurrency pairs are symmetrized on load; reflexive pairs are load errors.
// Transition ids may be arbitrary distinct integers; they are mapped to dense
// indices in file order.
// ---------------------------------------------------------------------------

inline Ltsc load_lts_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Ltsc m;
    std::map<std::string, int> state_index;
    for (auto& s : j.at("states")) {
        std::string name = s.get<std::string>();
        if (state_index.count(name)) throw Error("duplicate state name: " + name);
        state_index[name] = static_cast<int>(m.states.size());
        m.states.push_back(name);
    }
    auto state_of = [&](const std::string& name) {
        auto it = state_index.find(name);
        if (it == state_index.end()) throw Error("unknown state: " + name);
        return it->second;
    };
    m.initial = state_of(j.at("initial").get<std::string>());

    std::map<long long, int> id_map;
    if (j.count("transitions"))
        for (auto& t : j.at("transitions")) {
            long long file_id = t.at("id").get<long long>();
            if (id_map.count(file_id))
                throw Error("duplicate transition id " + std::to_string(file_id));
            int dense = static_cast<int>(m.transitions.size());
            id_map[file_id] = dense;
            m.transitions.push_back({dense, state_of(t.at("from").get<std::string>()),
                                     state_of(t.at("to").get<std::string>()),
                                     ActionLabel::from_string(t.at("label").get<std::string>())});
        }
    if (j.count("concurrency"))
        for (auto& pair : j.at("concurrency")) {
            if (!pair.is_array() || pair.size() != 2) throw Error("bad concurrency pair");
            long long a = pair[0].get<long long>(), b = pair[1].get<long long>();
            if (!id_map.count(a) || !id_map.count(b))
                throw Error("concurrency pair references unknown transition id");
            if (a == b)
                throw Error("reflexive concurrency pair on transition " + std::to_string(a));
            m.concurrency_pairs.push_back({id_map[a], id_map[b]});
        }
    m.finish();
    return m;
}

inline std::string save_lts_json(const Ltsc& m) {
    nlohmann::json j;
    j["states"] = m.states;
    j["initial"] = m.states[m.initial];
    nlohmann::json ts = nlohmann::json::array();
    for (const Transition& t : m.transitions) {
        ts.push_back({{"id", t.id},
                      {"from", m.states[t.source]},
                      {"to", m.states[t.target]},
                      {"label", t.label.to_string()}});
    }
    j["transitions"] = ts;
    nlohmann::json conc = nlohmann::json::array();
    for (auto& [a, b] : m.concurrency_pairs) conc.push_back({a, b});
    j["concurrency"] = conc;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Net JSON:
//   {"places":[...], "initial":{"p":1},
//    "transitions":[{"name":"t","label":"a","pre":{"p":1},"post":{"q":2}}]}
// ---------------------------------------------------------------------------

inline PetriNet load_net_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PetriNet net;
    for (auto& p : j.at("places")) net.places.push_back(p.get<std::string>());
    auto marking_of = [&](const nlohmann::json& obj) {
        Marking m;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            int p = net.place_index(it.key());
            if (p < 0) throw Error("unknown place: " + it.key());
            long long k = it.value().get<long long>();
            if (k < 0) throw Error("negative multiplicity for place " + it.key());
            m.add(p, k);
        }
        return m;
    };
    net.initial = marking_of(j.at("initial"));
    for (auto& t : j.at("transitions")) {
        NetTransition nt;
        nt.name = t.at("name").get<std::string>();
        nt.label = ActionLabel::from_string(t.at("label").get<std::string>());
        nt.pre = marking_of(t.at("pre"));
        nt.post = t.count("post") ? marking_of(t.at("post")) : Marking{};
        net.transitions.push_back(std::move(nt));
    }
    net.check_well_formed();
    return net;
}

// ---------------------------------------------------------------------------
// Task file JSON: {"tasks": {"name": [id,...] | {"by_label": "r1"}}}
// Transition ids refer to the loaded model's dense indices.
// ---------------------------------------------------------------------------

inline TaskSet load_tasks_json(const std::string& text, const Ltsc& m) {
    nlohmann::json j = nlohmann::json::parse(text);
    TaskSet ts;
    for (auto it = j.at("tasks").begin(); it != j.at("tasks").end(); ++it) {
        TaskSet::Task task;
        task.name = it.key();
        if (it.value().is_array()) {
            for (auto& id : it.value()) task.transitions.push_back(id.get<int>());
        } else if (it.value().is_object() && it.value().count("by_label")) {
            std::string label = it.value().at("by_label").get<std::string>();
            for (const Transition& t : m.transitions)
                if (t.label.is_visible() && t.label.name() == label)
                    task.transitions.push_back(t.id);
        } else {
            throw Error("task '" + task.name + "' must be an id array or {\"by_label\": ...}");
        }
        std::sort(task.transitions.begin(), task.transitions.end());
        ts.tasks.push_back(std::move(task));
    }
    ts.validate_for(m);
    return ts;
}

// ---------------------------------------------------------------------------
// DOT export: LTS states as circles, visible transitions as labelled boxes
// halfway along the edge (the Kripke shape of the DV translation), tau
// transitions as plain edges.
// ---------------------------------------------------------------------------

inline std::string to_dot(const Ltsc& m) {
    std::ostringstream os;
    os << "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n  init -> s" << m.initial << ";\n";
    for (int s = 0; s < m.num_states(); ++s)
        os << "  s" << s << " [label=\"" << m.states[s] << "\"];\n";
    for (const Transition& t : m.transitions) {
        if (t.label.is_visible()) {
            os << "  t" << t.id << " [shape=box, label=\"" << t.label.name() << "\"];\n";
            os << "  s" << t.source << " -> t" << t.id << ";\n";
            os << "  t" << t.id << " -> s" << t.target << ";\n";
        } else {
            os << "  s" << t.source << " -> s" << t.target << " [label=\"tau\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Model loading dispatch (.ccs, .net.json, .lts.json).
// ---------------------------------------------------------------------------

enum class ModelType { Ccs, Net, Lts };

inline ModelType model_type_from_path(const std::string& path) {
    auto ends_with = [&](const std::string& suffix) {
        return path.size() >= suffix.size() &&
               path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".ccs")) return ModelType::Ccs;
    if (ends_with(".net.json")) return ModelType::Net;
    if (ends_with(".lts.json")) return ModelType::Lts;
    throw Error("cannot infer model type from path (expected .ccs, .net.json or .lts.json): " +
                path);
}

struct LoadedModel {
    Ltsc ltsc;
    ModelType type = ModelType::Lts;
};

inline LoadedModel load_model(const std::string& path, ModelType type,
                              std::size_t max_states = 100000,
                              const std::string& main_name = "") {
    LoadedModel lm;
    lm.type = type;
    std::string text = read_file(path);
    switch (type) {
        case ModelType::Ccs: {
            CcsProgram prog = parse_ccs(text);
            if (!main_name.empty()) prog.main_name = main_name;
            if (prog.main_name.empty() && !prog.main_expr)
                throw Error("no 'main' definition in " + path + " (use --main to pick one)");
            CcsRef entry = prog.entry();
            std::set<std::string> seen;
            check_defined(entry, prog.defs, seen);
            lm.ltsc = explore_ccs(entry, prog.defs, max_states).ltsc;
            break;
        }
        case ModelType::Net:
            lm.ltsc = explore_net(load_net_json(text), max_states).ltsc;
            break;
        case ModelType::Lts:
            lm.ltsc = load_lts_json(text);
            break;
    }
    return lm;
}

} // namespace retlc
