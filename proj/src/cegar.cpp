// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/cegar.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>

#include "absint/linear.hpp"

namespace absint {

std::string_view to_string(CexKind k) {
    switch (k) {
    case CexKind::genuine: return "genuine";
    case CexKind::spurious: return "spurious";
    case CexKind::unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(RefineMode m) { return m == RefineMode::backward ? "backward" : "forward"; }

std::string_view to_string(CegarOutcome o) {
    switch (o) {
    case CegarOutcome::proved: return "proved";
    case CegarOutcome::refuted: return "refuted";
    case CegarOutcome::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

std::optional<AbstractCex> check_reachability(const AbstractTS& ts) {
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    const std::size_t n = ts.states.size();
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::vector<const AbstractTS::Step*>> succs(n);
    for (const auto& t : ts.transitions) {
        preds[t.dst].push_back(t.src);
        succs[t.src].push_back(&t);
    }
    // distance to the nearest bad state, by backward breadth-first search
    std::vector<std::size_t> dist(n, inf);
    std::deque<std::size_t> work;
    for (const auto b : ts.bad) {
        dist[b] = 0;
        work.push_back(b);
    }
    while (!work.empty()) {
        const std::size_t s = work.front();
        work.pop_front();
        for (const auto p : preds[s]) {
            if (dist[p] == inf) {
                dist[p] = dist[s] + 1;
                work.push_back(p);
            }
        }
    }
    std::optional<std::size_t> start;
    for (const auto i : ts.initial) {
        if (dist[i] != inf &&
            (!start || dist[i] < dist[*start] || (dist[i] == dist[*start] && ts.id(i) < ts.id(*start)))) {
            start = i;
        }
    }
    if (!start) {
        return std::nullopt;
    }
    AbstractCex cex;
    std::size_t cur = *start;
    cex.states.push_back(ts.states[cur]);
    while (dist[cur] > 0) {
        const AbstractTS::Step* best = nullptr;
        for (const auto* t : succs[cur]) {
            if (dist[t->dst] + 1 != dist[cur]) {
                continue;
            }
            if (!best || ts.id(t->dst) < ts.id(best->dst) || (t->dst == best->dst && t->edge < best->edge)) {
                best = t;
            }
        }
        cex.edges.push_back(best->edge);
        cur = best->dst;
        cex.states.push_back(ts.states[cur]);
    }
    return cex;
}

std::vector<std::string> state_ids(const AbstractCex& cex, std::size_t k) {
    std::vector<std::string> out;
    for (const auto& s : cex.states) {
        out.push_back("n" + std::to_string(s.node) + ":" + bits_to_string(s.bits, k));
    }
    return out;
}

namespace {

const Command& command_at(const Cfg& cfg, const std::vector<int>& edges, std::size_t i) {
    return cfg.edges[static_cast<std::size_t>(edges[i])].cmd;
}

/// Condition before step `first` under which steps [first, last) can execute.
BoolPtr suffix_condition(const Cfg& cfg, const std::vector<int>& edges, std::size_t first, std::size_t last) {
    BoolPtr q = expr::truth(true);
    for (std::size_t i = last; i-- > first;) {
        const Command& c = command_at(cfg, edges, i);
        switch (c.kind) {
        case Command::Kind::assume: q = expr::conj(c.guard, q); break;
        case Command::Kind::assign: q = substitute(q, c.target, c.value); break;
        case Command::Kind::skip: break;
        }
    }
    return q;
}

/// Interval environments before each step, from the initial environment (size edges + 1).
std::vector<IntervalEnv> forward_envs(const Cfg& cfg, const std::vector<int>& edges, const InitRanges& ranges,
                                      const CallOracle& calls) {
    std::vector<IntervalEnv> out{initial_interval_env(cfg, ranges)};
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out.push_back(apply_command(command_at(cfg, edges, i), out.back(), calls));
    }
    return out;
}

using Seconds = std::chrono::duration<double>;

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<Seconds>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

BoolPtr path_condition(const Cfg& cfg, const std::vector<int>& edges, std::size_t count) {
    return suffix_condition(cfg, edges, 0, count);
}

CexVerdict validate_cex(const AbstractCex& cex, const Cfg& cfg, const InitRanges& ranges,
                        const ValidationOptions& options) {
    AbstractionOptions ao;
    ao.entail = options.entail;
    const Abstractor abs(cfg, PredicateTable(), ranges, ao);
    const Entailment& checker = abs.checker();
    const BoolPtr& init = abs.init_formula();
    const Evaluator ev(cfg.functions);
    const std::size_t m = cex.edges.size();
    const auto envs = forward_envs(cfg, cex.edges, ranges, abs.summaries().oracle());

    // Replays the first `count` steps from models of the prefix condition; calls `done` on success.
    auto replay_models = [&](std::size_t count, const std::function<void(const ConcreteState&, const Trace&)>& done) {
        const std::vector<int> prefix(cex.edges.begin(), cex.edges.begin() + static_cast<std::ptrdiff_t>(count));
        std::size_t samples = 0;
        bool found = false;
        checker.for_each_model(
            expr::conj(init, path_condition(cfg, cex.edges, count)), cfg.var_order,
            [&](std::span<const Integer> values) {
                const ConcreteState s0{Cfg::entry, {values.begin(), values.end()}};
                const auto r = replay_trace(cfg, prefix, s0, ev);
                if (const auto* t = std::get_if<Trace>(&r)) {
                    done(s0, *t);
                    found = true;
                    return false;
                }
                return ++samples < options.sample_bound;
            },
            checker.options().max_points);
        return found;
    };

    for (std::size_t j = 0; j < m; ++j) {
        if (!envs[j + 1].is_bottom() && !checker.unsatisfiable(expr::conj(init, path_condition(cfg, cex.edges, j + 1)))) {
            continue;
        }
        CexVerdict v;
        v.kind = CexKind::spurious;
        v.index = j;
        v.reason = "step " + std::to_string(j) + " (" + to_string(command_at(cfg, cex.edges, j)) +
                   ") cannot execute after the path prefix";
        replay_models(j, [&](const ConcreteState& s0, const Trace& t) {
            v.witness = t.steps.empty() ? s0 : t.steps.back().after;
        });
        return v;
    }
    CexVerdict v;
    if (replay_models(m, [&](const ConcreteState&, const Trace& t) { v.trace = t; }) &&
        (v.trace.steps.empty() ? cex.states.front().node : v.trace.steps.back().after.node) == Cfg::error) {
        v.kind = CexKind::genuine;
        v.reason = "concrete run reaches the error node";
        return v;
    }
    v = CexVerdict{};
    v.reason = "no replay succeeded within " + std::to_string(options.sample_bound) +
               " candidate initial states and infeasibility could not be proved";
    return v;
}

bool realizable(const Abstractor& abs, const std::vector<int>& edges) {
    std::vector<Valuation32> states = abs.initial_valuations();
    NodeId node = Cfg::entry;
    for (const int e : edges) {
        const Edge& edge = abs.cfg().edges[static_cast<std::size_t>(e)];
        if (edge.src != node) {
            return false;
        }
        std::set<Valuation32> next;
        for (const auto s : states) {
            for (const auto t : abs.post(edge.cmd, s)) {
                next.insert(t);
            }
        }
        states.assign(next.begin(), next.end());
        node = edge.dst;
        if (states.empty()) {
            return false;
        }
    }
    return true;
}

Refinement refine(const PredicateTable& pt, const CexVerdict& verdict, const AbstractCex& cex, const Cfg& cfg,
                  RefineMode mode, const InitRanges& ranges, const AbstractionOptions& options) {
    if (verdict.kind != CexKind::spurious || verdict.index >= cex.edges.size()) {
        throw std::invalid_argument("refine needs a spurious verdict with a step on the path");
    }
    const std::size_t j = verdict.index;
    const Abstractor base(cfg, PredicateTable(), ranges, options);
    const Entailment& checker = base.checker();
    Refinement out{pt, {}, false};

    auto offer = [&](const BoolPtr& b) {
        const BoolPtr n = normalize(b);
        if (n->kind == BoolExpr::Kind::constant || checker.unsatisfiable(n) ||
            checker.prove(expr::truth(true), n)) {
            return;
        }
        Predicate p = make_predicate(n);
        const std::string text = p.text;
        if (out.table.add(std::move(p))) {
            out.added.push_back(text);
        }
    };
    auto eliminated = [&] {
        try {
            return !realizable(Abstractor(cfg, out.table, ranges, options), cex.edges);
        } catch (const PredicateLimitError&) {
            return false;
        }
    };

    const Command& failing = command_at(cfg, cex.edges, j);
    if (mode == RefineMode::backward) {
        if (failing.kind == Command::Kind::assume) {
            std::vector<BoolPtr> chain{failing.guard};
            BoolPtr q = failing.guard;
            for (std::size_t i = j; i-- > 0;) {
                const Command& c = command_at(cfg, cex.edges, i);
                if (c.kind == Command::Kind::assign) {
                    q = substitute(q, c.target, c.value);
                    chain.push_back(q);
                }
            }
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                offer(*it);
            }
        }
    } else {
        const auto envs = forward_envs(cfg, cex.edges, ranges, base.summaries().oracle());
        const IntervalEnv& before = envs[j];
        if (!before.is_bottom()) {
            for (std::size_t v = 0; v < before.size(); ++v) {
                const Interval& i = before.get(v);
                const auto var = expr::variable(cfg.var_order[v]);
                if (i.lo().is_finite()) {
                    offer(expr::compare(CmpOp::ge, var, expr::constant(i.lo().value())));
                }
                if (i.hi().is_finite()) {
                    offer(expr::compare(CmpOp::le, var, expr::constant(i.hi().value())));
                }
            }
        }
        if (failing.kind == Command::Kind::assume) {
            offer(failing.guard);
        }
    }
    out.eliminated = eliminated();
    if (!out.eliminated) {
        for (std::size_t i = 0; i <= j; ++i) {
            offer(suffix_condition(cfg, cex.edges, i, j + 1));
        }
        out.eliminated = eliminated();
    }
    return out;
}

CegarReport cegar_loop(const Cfg& cfg, const PredicateTable& initial, const CegarOptions& options) {
    if (options.budget < 1) {
        throw std::invalid_argument("budget must be at least 1");
    }
    CegarReport report;
    PredicateTable pt = initial;
    for (int it = 1; it <= options.budget; ++it) {
        CegarIteration rec;
        rec.predicates = pt.texts();
        if (pt.size() > options.abstraction.max_predicates) {
            report.reason = "predicate table has " + std::to_string(pt.size()) + " predicates, above the limit of " +
                            std::to_string(options.abstraction.max_predicates);
            report.iterations.push_back(std::move(rec));
            return report;
        }
        auto t0 = std::chrono::steady_clock::now();
        const Abstractor abs(cfg, pt, options.ranges, options.abstraction);
        const AbstractTS ts = build_abstract_ts(abs);
        rec.seconds.build = since(t0);
        rec.abstract_states = ts.states.size();
        rec.abstract_transitions = ts.transitions.size();

        t0 = std::chrono::steady_clock::now();
        const auto cex = check_reachability(ts);
        rec.seconds.check = since(t0);
        if (!cex) {
            report.outcome = CegarOutcome::proved;
            report.reason = "no abstract state at the error node is reachable";
            report.iterations.push_back(std::move(rec));
            return report;
        }
        rec.cex = cex;
        rec.cex_states = state_ids(*cex, pt.size());

        t0 = std::chrono::steady_clock::now();
        const CexVerdict verdict = validate_cex(*cex, cfg, options.ranges, options.validation);
        rec.seconds.validate = since(t0);
        rec.verdict = verdict;
        if (verdict.kind == CexKind::genuine) {
            // self-check before reporting
            const Evaluator ev(cfg.functions);
            const ConcreteState s0 = verdict.trace.steps.empty() ? ConcreteState{} : verdict.trace.steps.front().before;
            const auto replay = replay_trace(cfg, cex->edges, s0, ev);
            const auto* t = std::get_if<Trace>(&replay);
            if (t == nullptr || t->steps.empty() || t->steps.back().after.node != Cfg::error) {
                throw std::logic_error("genuine counterexample failed to replay");
            }
            report.outcome = CegarOutcome::refuted;
            report.trace = *t;
            report.reason = verdict.reason;
            report.iterations.push_back(std::move(rec));
            return report;
        }
        if (verdict.kind == CexKind::unknown) {
            report.reason = "counterexample could not be classified: " + verdict.reason;
            report.iterations.push_back(std::move(rec));
            return report;
        }
        if (it == options.budget) {
            report.reason = "iteration budget of " + std::to_string(options.budget) + " exhausted";
            report.iterations.push_back(std::move(rec));
            return report;
        }
        t0 = std::chrono::steady_clock::now();
        Refinement r = refine(pt, verdict, *cex, cfg, options.refine, options.ranges, options.abstraction);
        rec.seconds.refine = since(t0);
        rec.added = r.added;
        report.iterations.push_back(std::move(rec));
        if (r.added.empty()) {
            report.reason = "refinement produced no new predicate";
            return report;
        }
        pt = std::move(r.table);
    }
    return report;
}

} // namespace absint
