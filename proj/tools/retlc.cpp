// Command-line front end: load a model (CCS, net or explicit LTS), decide
// temporal judgements under a completeness criterion and a blockable-action
// set, validate models, export DOT, or run the brute-force oracle.
//
// Exit codes: 0 = holds / pass, 1 = fails / violations, 2 = usage or model
// error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "retlc/checker.hpp"
#include "retlc/io.hpp"
#include "retlc/oracle.hpp"

using namespace retlc;

namespace {

struct CommonOptions {
    std::string model_path;
    std::string model_type; // "", "ccs", "net", "lts"
    std::string main_name;
    std::size_t max_states = 100000;
};

struct JudgementOptions {
    std::string formula;
    std::string formula_file;
    std::string logic = "ltl";
    std::string cc = "progress";
    std::vector<std::string> block;
    std::string tasks_file;
    bool tasks_by_label_flag = false;
    bool json_output = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--model", opt.model_path, "model file (.ccs, .net.json, .lts.json)")
        ->required();
    cmd->add_option("--model-type", opt.model_type, "override model type: ccs|net|lts")
        ->check(CLI::IsMember({"ccs", "net", "lts"}));
    cmd->add_option("--main", opt.main_name, "CCS definition to check (default: main)");
    cmd->add_option("--max-states", opt.max_states, "state-space bound (default 100000)");
}

void add_judgement(CLI::App* cmd, JudgementOptions& opt, bool with_logic = true) {
    cmd->add_option("--formula", opt.formula, "formula text");
    cmd->add_option("--formula-file", opt.formula_file,
                    "file with one formula per line ('#' comments)");
    if (with_logic)
        cmd->add_option("--logic", opt.logic, "ltl|ctl (default ltl)")
            ->check(CLI::IsMember({"ltl", "ctl"}));
    cmd->add_option("--cc", opt.cc, "completeness criterion: top|progress|justness|wf|sf")
        ->check(CLI::IsMember({"top", "progress", "justness", "wf", "sf"}));
    cmd->add_option("--block", opt.block, "blockable actions (comma separated)")
        ->delimiter(',');
    cmd->add_option("--tasks", opt.tasks_file, "task file (JSON) for wf/sf");
    cmd->add_flag("--tasks-by-label", opt.tasks_by_label_flag,
                  "one task per visible label for wf/sf");
    cmd->add_flag("--json", opt.json_output, "machine-readable output");
}

ModelType resolve_type(const CommonOptions& opt) {
    if (opt.model_type == "ccs") return ModelType::Ccs;
    if (opt.model_type == "net") return ModelType::Net;
    if (opt.model_type == "lts") return ModelType::Lts;
    return model_type_from_path(opt.model_path);
}

CompletenessCriterion resolve_cc(const JudgementOptions& opt, const Ltsc& m) {
    if (opt.cc == "top") return CompletenessCriterion::top();
    if (opt.cc == "progress") return CompletenessCriterion::progress();
    if (opt.cc == "justness") return CompletenessCriterion::justness();
    TaskSet tasks;
    if (opt.tasks_by_label_flag) {
        tasks = tasks_by_label(m);
    } else if (!opt.tasks_file.empty()) {
        tasks = load_tasks_json(read_file(opt.tasks_file), m);
    } else {
        throw Error("criterion '" + opt.cc + "' needs --tasks or --tasks-by-label");
    }
    return opt.cc == "wf" ? CompletenessCriterion::weak_fairness(tasks)
                          : CompletenessCriterion::strong_fairness(tasks);
}

BlockSet resolve_block(const JudgementOptions& opt) {
    BlockSet b;
    for (auto& name : opt.block) b.insert(name);
    return b;
}

std::vector<std::string> resolve_formulas(const JudgementOptions& opt) {
    std::vector<std::string> formulas;
    if (!opt.formula.empty()) formulas.push_back(opt.formula);
    if (!opt.formula_file.empty()) {
        auto lines = split_formula_lines(read_file(opt.formula_file));
        formulas.insert(formulas.end(), lines.begin(), lines.end());
    }
    if (formulas.empty()) throw Error("no formula given (use --formula or --formula-file)");
    return formulas;
}

nlohmann::json path_json(const Ltsc& m, const LtsPath& p, bool close_cycle) {
    nlohmann::json steps = nlohmann::json::array();
    int at = p.start;
    for (int t : p.steps) {
        steps.push_back({{"state", m.states[at]}, {"action", m.transitions[t].label.to_string()}});
        at = m.transitions[t].target;
    }
    if (!close_cycle)
        steps.push_back({{"state", m.states[at]}, {"action", nullptr}});
    return steps;
}

nlohmann::json verdict_json(const Ltsc& m, const Verdict& v, const JudgementOptions& opt,
                            const std::string& formula) {
    nlohmann::json j;
    j["formula"] = formula;
    j["verdict"] = v.holds ? "holds" : "fails";
    j["criterion"] = opt.cc;
    j["block"] = opt.block;
    if (v.witness_kind == Verdict::FinitePath) {
        j["counterexample"] = {{"kind", "finite"},
                               {"prefix", path_json(m, v.finite_witness, false)}};
    } else if (v.witness_kind == Verdict::LassoPath) {
        LtsPath cyc{v.lasso_witness.prefix.end_state(m), v.lasso_witness.cycle};
        j["counterexample"] = {{"kind", "lasso"},
                               {"prefix", path_json(m, v.lasso_witness.prefix, true)},
                               {"cycle", path_json(m, cyc, true)}};
    } else {
        j["counterexample"] = nullptr;
    }
    j["stats"] = {{"product_states", v.stats.product_states}, {"explored", v.stats.explored}};
    return j;
}

void print_path(const Ltsc& m, const LtsPath& p, bool final_state) {
    int at = p.start;
    std::cout << "    " << m.states[at];
    for (int t : p.steps) {
        std::cout << " --" << m.transitions[t].label.to_string() << "--> ";
        at = m.transitions[t].target;
        std::cout << m.states[at];
    }
    if (final_state) std::cout << "  (end)";
    std::cout << "\n";
}

void print_verdict(const Ltsc& m, const Verdict& v, const std::string& formula) {
    std::cout << (v.holds ? "holds" : "fails") << "  " << formula << "\n";
    if (v.witness_kind == Verdict::FinitePath) {
        std::cout << "  counterexample (complete finite path):\n";
        print_path(m, v.finite_witness, true);
    } else if (v.witness_kind == Verdict::LassoPath) {
        std::cout << "  counterexample (complete lasso):\n  prefix:\n";
        print_path(m, v.lasso_witness.prefix, false);
        std::cout << "  cycle:\n";
        print_path(m, LtsPath{v.lasso_witness.prefix.end_state(m), v.lasso_witness.cycle}, false);
    }
}

int cmd_check(const CommonOptions& com, const JudgementOptions& opt) {
    LoadedModel lm = load_model(com.model_path, resolve_type(com), com.max_states, com.main_name);
    CompletenessCriterion cc = resolve_cc(opt, lm.ltsc);
    BlockSet b = resolve_block(opt);
    std::vector<std::string> formulas = resolve_formulas(opt);

    bool all_hold = true;
    nlohmann::json results = nlohmann::json::array();
    for (auto& text : formulas) {
        Verdict v;
        if (opt.logic == "ctl") v = check_ctl(lm.ltsc, parse_ctl(text), cc, b);
        else v = check_ltl(lm.ltsc, parse_ltl(text), cc, b);
        all_hold = all_hold && v.holds;
        if (opt.json_output) results.push_back(verdict_json(lm.ltsc, v, opt, text));
        else print_verdict(lm.ltsc, v, text);
    }
    if (opt.json_output)
        std::cout << (results.size() == 1 ? results[0].dump(2) : results.dump(2)) << "\n";
    return all_hold ? 0 : 1;
}

int cmd_explore(const CommonOptions& com, const std::string& out_path,
                const std::string& dot_path) {
    LoadedModel lm = load_model(com.model_path, resolve_type(com), com.max_states, com.main_name);
    if (!out_path.empty()) write_file(out_path, save_lts_json(lm.ltsc));
    if (!dot_path.empty()) write_file(dot_path, to_dot(lm.ltsc));
    if (out_path.empty() && dot_path.empty()) std::cout << save_lts_json(lm.ltsc);
    std::cerr << "states: " << lm.ltsc.num_states()
              << ", transitions: " << lm.ltsc.num_transitions()
              << ", concurrent pairs: " << lm.ltsc.concurrency_pairs.size() << "\n";
    return 0;
}

int cmd_validate(const CommonOptions& com, int depth) {
    ModelType type = resolve_type(com);
    if (type == ModelType::Net) {
        PetriNet net = load_net_json(read_file(com.model_path));
        ConflictValidation rep = validate_structural_conflict(net, com.max_states);
        if (rep.ok()) {
            std::cout << "pass: structural conflict net (" << rep.markings_explored
                      << " markings explored; certification bounded by --max-states)\n";
            return 0;
        }
        for (auto& v : rep.violations)
            std::cout << "violation: step {" << net.transitions[v.t].name << ","
                      << net.transitions[v.u].name << "} enabled at "
                      << marking_to_string(net, v.marking) << " with a shared preplace\n";
        return 1;
    }
    LoadedModel lm = load_model(com.model_path, type, com.max_states, com.main_name);
    LtscValidation rep = validate_ltsc(lm.ltsc, depth);
    if (rep.ok()) {
        std::cout << "pass: ltsc axioms hold up to depth " << depth << "\n";
        return 0;
    }
    for (int t : rep.reflexive) std::cout << "violation: transition " << t << " concurrent with itself\n";
    for (auto& v : rep.closure) {
        std::cout << "violation: no variant of transition " << v.transition << " ("
                  << lm.ltsc.transitions[v.transition].label.to_string() << ") after path";
        for (int s : v.path.steps) std::cout << " " << s;
        std::cout << " from " << lm.ltsc.states[v.path.start] << "\n";
    }
    return 1;
}

int cmd_oracle(const CommonOptions& com, const JudgementOptions& opt, int prefix_bound,
               int cycle_bound) {
    LoadedModel lm = load_model(com.model_path, resolve_type(com), com.max_states, com.main_name);
    CompletenessCriterion cc = resolve_cc(opt, lm.ltsc);
    BlockSet b = resolve_block(opt);
    std::vector<std::string> formulas = resolve_formulas(opt);

    bool any_fails = false;
    for (auto& text : formulas) {
        OracleResult r = oracle_check(lm.ltsc, parse_ltl(text), cc, b, prefix_bound, cycle_bound);
        if (r.fails()) {
            any_fails = true;
            std::cout << "fails  " << text << "\n";
            if (r.witness->is_finite_path()) {
                std::cout << "  complete finite path:\n";
                print_path(lm.ltsc, r.witness->prefix, true);
            } else {
                std::cout << "  complete lasso:\n  prefix:\n";
                print_path(lm.ltsc, r.witness->prefix, false);
                std::cout << "  cycle:\n";
                print_path(lm.ltsc,
                           LtsPath{r.witness->prefix.end_state(lm.ltsc), r.witness->cycle}, false);
            }
        } else {
            std::cout << "holds-within-bound  " << text << "  (" << r.complete_paths
                      << " complete candidates of " << r.candidates << ")\n";
        }
    }
    return any_fails ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reactive temporal logic checker"};
    app.require_subcommand(1);

    CommonOptions com_check, com_explore, com_validate, com_oracle;
    JudgementOptions opt_check, opt_oracle;
    std::string out_path, dot_path, bounds = "6,6";
    int depth = 3;

    CLI::App* check = app.add_subcommand("check", "decide a temporal judgement");
    add_common(check, com_check);
    add_judgement(check, opt_check);

    CLI::App* explore = app.add_subcommand("explore", "explore a model to an explicit LTS");
    add_common(explore, com_explore);
    explore->add_option("--out", out_path, "write explicit-LTS JSON here");
    explore->add_option("--dot", dot_path, "write GraphViz DOT here");

    CLI::App* validate = app.add_subcommand("validate", "validate net / LTSC axioms");
    add_common(validate, com_validate);
    validate->add_option("--depth", depth, "closure-axiom path bound (default 3)");

    CLI::App* oracle = app.add_subcommand("oracle", "run the bounded brute-force oracle");
    add_common(oracle, com_oracle);
    add_judgement(oracle, opt_oracle, false);
    oracle->add_option("--bounds", bounds, "prefix,cycle bounds (default 6,6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(com_check, opt_check);
        if (explore->parsed()) return cmd_explore(com_explore, out_path, dot_path);
        if (validate->parsed()) return cmd_validate(com_validate, depth);
        if (oracle->parsed()) {
            auto comma = bounds.find(',');
            if (comma == std::string::npos) throw Error("--bounds must be prefix,cycle");
            int pb = std::stoi(bounds.substr(0, comma));
            int cb = std::stoi(bounds.substr(comma + 1));
            return cmd_oracle(com_oracle, opt_oracle, pb, cb);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
