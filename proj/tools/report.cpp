// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "report.hpp"

#include <iomanip>
#include <sstream>

#include "absint/sign.hpp"

namespace absint::report {

namespace {

const char* const green = "\033[32m";
const char* const red = "\033[31m";
const char* const yellow = "\033[33m";
const char* const reset = "\033[0m";

std::string paint(const Style& style, const char* code, const std::string& s) {
    return style.color ? code + s + reset : s;
}

std::string node_name(NodeId n) {
    switch (n) {
    case Cfg::entry: return "0 (entry)";
    case Cfg::exit: return "1 (exit)";
    case Cfg::error: return "2 (error)";
    default: return std::to_string(n);
    }
}

Json base(const char* command) {
    Json j = Json::object();
    j["schema_version"] = schema_version;
    j["command"] = command;
    return j;
}

Json stats_json(const AnalysisStats& s) {
    return Json{{"ascending_steps", s.ascending_steps},
                {"widenings", s.widenings},
                {"narrowing_steps", s.narrowing_steps},
                {"summary_contexts", s.summary_contexts}};
}

Json ranges_json(const InitRanges& ranges) {
    Json j = Json::object();
    for (const auto& [v, r] : ranges) {
        j[v] = to_string(Interval::range(r.lo, r.hi));
    }
    return j;
}

template <Lattice V>
void fill_analysis(Report& r, const Cfg& cfg, const AnalysisResult<V>& res, bool post_ok) {
    Json nodes = Json::array();
    std::ostringstream text;
    text << "nodes:\n";
    for (int n = 0; n < cfg.node_count; ++n) {
        const std::string env = to_string(res.envs[static_cast<std::size_t>(n)]);
        nodes.push_back(Json{{"node", n}, {"env", env}});
        text << "  " << node_name(n) << ": " << env << '\n';
    }
    Json widening = Json::array();
    for (NodeId n : res.widening_points) {
        widening.push_back(n);
    }
    Json contexts = Json::array();
    if (res.summaries) {
        for (const auto& e : res.summaries->entries()) {
            contexts.push_back(
                Json{{"function", e.function}, {"input", to_string(e.input)}, {"output", to_string(e.output)}});
        }
    }
    r.json["entry_env"] = to_string(res.entry_env);
    r.json["nodes"] = std::move(nodes);
    r.json["widening_points"] = std::move(widening);
    r.json["summary_contexts"] = std::move(contexts);
    r.json["stats"] = stats_json(res.stats);
    r.json["post_fixpoint"] = post_ok;
    text << "stats: " << res.stats.ascending_steps << " ascending steps, " << res.stats.widenings
         << " widenings, " << res.stats.narrowing_steps << " narrowing steps\n";
    r.text += text.str();
}

Json cex_json(const AbstractCex& cex, const std::vector<std::string>& ids) {
    Json edges = Json::array();
    for (int e : cex.edges) {
        edges.push_back("e" + std::to_string(e));
    }
    return Json{{"states", ids}, {"edges", std::move(edges)}};
}

Json verdict_json(const CexVerdict& v, const Cfg& cfg) {
    Json j{{"kind", std::string(to_string(v.kind))}, {"reason", v.reason}};
    if (v.kind == CexKind::spurious) {
        j["index"] = v.index;
        j["witness"] = v.witness ? state_json(*v.witness, cfg) : Json(nullptr);
    }
    return j;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i > 0 ? sep : "") + items[i];
    }
    return out;
}

std::string format_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s;
    return os.str();
}

} // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json state_json(const ConcreteState& s, const Cfg& cfg) {
    Json env = Json::object();
    for (std::size_t i = 0; i < s.env.size() && i < cfg.var_order.size(); ++i) {
        env[cfg.var_order[i]] = to_string(s.env[i]);
    }
    return Json{{"node", s.node}, {"env", std::move(env)}};
}

Json trace_json(const Trace& t, const Cfg& cfg) {
    Json steps = Json::array();
    for (const auto& st : t.steps) {
        steps.push_back(Json{{"edge", "e" + std::to_string(st.edge)},
                             {"command", to_string(cfg.edges[static_cast<std::size_t>(st.edge)].cmd)},
                             {"after", state_json(st.after, cfg)}});
    }
    return Json{{"initial", t.steps.empty() ? Json(nullptr) : state_json(t.steps.front().before, cfg)},
                {"steps", std::move(steps)}};
}

Report analyze(const Cfg& cfg, const AnalyzeRequest& req, const Style&) {
    Report r;
    r.json = base("analyze");
    r.json["input"] = req.input;
    r.json["domain"] = req.domain == Domain::sign ? "sign" : "interval";
    r.json["init"] = ranges_json(req.ranges);
    r.json["options"] = Json{{"narrowing_budget", req.fixpoint.narrowing_budget}, {"widening", req.fixpoint.widening}};

    std::ostringstream head;
    head << "analysis of " << req.input << " (" << r.json["domain"].get<std::string>() << " domain)\n";
    FixpointOptions quiet = req.fixpoint;
    quiet.trace = nullptr;
    Json functions = Json::array();
    if (!cfg.functions.empty()) {
        head << "functions:\n";
    }
    for (const auto& f : cfg.functions) {
        const Interval out = analyze_function(f.name, cfg.functions, Interval::top(), quiet);
        functions.push_back(Json{{"name", f.name}, {"input", to_string(Interval::top())}, {"output", to_string(out)}});
        head << "  " << f.name << ": " << to_string(Interval::top()) << " -> " << to_string(out) << '\n';
    }
    r.json["functions"] = std::move(functions);
    r.text = head.str();

    bool post_ok = false;
    if (req.domain == Domain::interval) {
        const auto res = analyze_cfg(cfg, initial_interval_env(cfg, req.ranges), req.fixpoint);
        post_ok = check_post_fixpoint(cfg, res);
        fill_analysis(r, cfg, res, post_ok);
    } else {
        const auto res = analyze_cfg(cfg, initial_sign_env(cfg, req.ranges), req.fixpoint);
        post_ok = check_post_fixpoint(cfg, res);
        fill_analysis(r, cfg, res, post_ok);
    }
    r.text += std::string("post-fixpoint check: ") + (post_ok ? "ok" : "FAILED") + '\n';
    r.exit_code = post_ok ? 0 : 2;
    return r;
}

Report check(const Cfg& cfg, const CheckRequest& req, const Style& style) {
    const CegarReport cr = cegar_loop(cfg, req.initial, req.options);
    Report r;
    r.json = base("check");
    r.json["input"] = req.input;
    r.json["init"] = ranges_json(req.options.ranges);
    r.json["options"] = Json{{"budget", req.options.budget},
                             {"refine", std::string(to_string(req.options.refine))},
                             {"predicates", req.preds_source},
                             {"sample_bound", req.options.validation.sample_bound},
                             {"witness_box", req.options.validation.entail.bound.convert_to<long long>()}};
    r.json["outcome"] = std::string(to_string(cr.outcome));
    r.json["reason"] = cr.reason;
    r.json["trace"] = cr.trace ? trace_json(*cr.trace, cfg) : Json(nullptr);

    Json iterations = Json::array();
    std::size_t refinements = 0;
    for (std::size_t i = 0; i < cr.iterations.size(); ++i) {
        const auto& it = cr.iterations[i];
        Json j{{"iteration", i + 1},
               {"predicates", it.predicates},
               {"abstract_states", it.abstract_states},
               {"abstract_transitions", it.abstract_transitions},
               {"cex", it.cex ? cex_json(*it.cex, it.cex_states) : Json(nullptr)},
               {"verdict", it.verdict ? verdict_json(*it.verdict, cfg) : Json(nullptr)},
               {"added", it.added}};
        if (style.timings) {
            j["seconds"] = Json{{"build", it.seconds.build},
                                {"check", it.seconds.check},
                                {"validate", it.seconds.validate},
                                {"refine", it.seconds.refine}};
        }
        refinements += it.added.empty() ? 0 : 1;
        iterations.push_back(std::move(j));
    }
    r.json["iterations"] = std::move(iterations);
    r.json["refinements"] = refinements;

    const char* color = cr.outcome == CegarOutcome::proved ? green : cr.outcome == CegarOutcome::refuted ? red : yellow;
    std::ostringstream os;
    os << "check " << req.input << ": " << paint(style, color, std::string(to_string(cr.outcome))) << '\n';
    os << "reason: " << cr.reason << "\n\n";
    os << std::left << std::setw(6) << "iter" << std::setw(7) << "preds" << std::setw(8) << "states" << std::setw(7)
       << "trans" << std::setw(5) << "cex" << std::setw(10) << "verdict";
    if (style.timings) {
        os << std::setw(9) << "seconds";
    }
    os << "added\n";
    for (std::size_t i = 0; i < cr.iterations.size(); ++i) {
        const auto& it = cr.iterations[i];
        os << std::setw(6) << i + 1 << std::setw(7) << it.predicates.size() << std::setw(8) << it.abstract_states
           << std::setw(7) << it.abstract_transitions << std::setw(5)
           << (it.cex ? std::to_string(it.cex->edges.size()) : "-") << std::setw(10)
           << (it.verdict ? std::string(to_string(it.verdict->kind)) : "-");
        if (style.timings) {
            const auto& s = it.seconds;
            os << std::setw(9) << format_seconds(s.build + s.check + s.validate + s.refine);
        }
        os << (it.added.empty() ? "-" : join(it.added, ", ")) << '\n';
    }
    if (!cr.iterations.empty()) {
        os << "\nfinal predicates: " << join(cr.iterations.back().predicates, ", ") << '\n';
    }
    if (cr.trace) {
        os << "\ncounterexample trace:\n";
        if (!cr.trace->steps.empty()) {
            os << "  " << to_string(cr.trace->steps.front().before, cfg) << '\n';
        }
        for (const auto& st : cr.trace->steps) {
            os << "  -- " << to_string(cfg.edges[static_cast<std::size_t>(st.edge)].cmd) << " --> "
               << to_string(st.after, cfg) << '\n';
        }
    }
    r.text = os.str();
    r.exit_code = cr.outcome == CegarOutcome::proved ? 0 : cr.outcome == CegarOutcome::refuted ? 1 : 2;
    return r;
}

Report refine_check(const RefinementInstance& inst, const RefineRequest& req, const Style& style) {
    const RefinementReport rr = check_refinement(inst);
    Report r;
    r.json = base("refine-check");
    r.json["abstract"] = req.abstract_input;
    r.json["refined"] = req.refined_input;
    r.json["gluing"] = req.gluing_input.empty() ? Json(nullptr) : Json(req.gluing_input);
    r.json["old_actions"] = inst.old_actions;
    r.json["new_actions"] = inst.new_actions;
    r.json["refines"] = rr.refines;
    r.json["outcome"] = rr.refines ? "refines" : "does-not-refine";
    Json conditions = Json::object();
    std::ostringstream os;
    os << "refine-check " << req.refined_input << " against " << req.abstract_input << ": "
       << paint(style, rr.refines ? green : red, rr.refines ? "refines" : "does-not-refine") << '\n';
    for (const ConditionResult* c : {&rr.simulation, &rr.no_tau_cycle, &rr.no_new_deadlock}) {
        conditions[c->name] = Json{{"passed", c->passed}, {"witness", c->witness}};
        os << "  " << std::left << std::setw(26) << c->name << (c->passed ? "pass" : "FAIL");
        if (!c->passed) {
            os << "  witness: " << join(c->witness, " ");
        }
        os << '\n';
    }
    r.json["conditions"] = std::move(conditions);
    Json relation = Json::array();
    for (const auto& [refined, abstract] : rr.relation) {
        relation.push_back(Json::array({refined, abstract}));
    }
    os << "simulation relation: " << rr.relation.size() << " pairs\n";
    r.json["relation"] = std::move(relation);
    r.text = os.str();
    r.exit_code = rr.refines ? 0 : 1;
    return r;
}

Report enumerate(const Cfg& cfg, const EnumerateRequest& req, const Style&) {
    const ConcreteSystem sys = enumerate_reachable(cfg, req.ranges, req.limit, req.eval);
    Report r;
    r.json = base("enumerate");
    r.json["input"] = req.input;
    r.json["init"] = ranges_json(req.ranges);
    r.json["options"] = Json{{"limit", req.limit}, {"wrap64", req.eval.overflow == OverflowPolicy::wrap64}};
    r.json["truncated"] = sys.truncated;
    Json states = Json::array();
    bool error_reachable = false;
    for (std::size_t i = 0; i < sys.states.size(); ++i) {
        Json s = state_json(sys.states[i], cfg);
        s["id"] = "s" + std::to_string(i);
        states.push_back(std::move(s));
        error_reachable = error_reachable || sys.states[i].node == Cfg::error;
    }
    auto ids = [](const std::vector<std::size_t>& v) {
        std::vector<std::string> out;
        for (std::size_t i : v) {
            out.push_back("s" + std::to_string(i));
        }
        return out;
    };
    r.json["states"] = std::move(states);
    r.json["initial"] = ids(sys.initial);
    r.json["divergent"] = ids(sys.divergent);
    r.json["transitions"] = sys.transitions.size();
    r.json["error_reachable"] = error_reachable;

    std::ostringstream os;
    os << "enumerate " << req.input << ": " << sys.states.size() << " states, " << sys.transitions.size()
       << " transitions" << (sys.truncated ? " (truncated)" : "") << '\n';
    os << "error node reachable: " << (error_reachable ? "yes" : "no") << '\n';
    if (!sys.divergent.empty()) {
        os << "divergent states: " << join(ids(sys.divergent), " ") << '\n';
    }
    for (std::size_t i = 0; i < sys.states.size(); ++i) {
        os << "  s" << i << ' ' << to_string(sys.states[i], cfg) << '\n';
    }
    r.text = os.str();
    return r;
}

} // namespace absint::report
