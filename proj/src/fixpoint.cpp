// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/fixpoint.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace absint {

constexpr std::size_t no_dependency = std::numeric_limits<std::size_t>::max();

SummaryTable::SummaryTable(std::vector<FunDef> functions, FixpointOptions options)
    : functions_(std::move(functions)), options_(std::move(options)) {}

CallOracle SummaryTable::oracle() {
    return [this](const std::string& fn, const Interval& arg) { return summary(fn, arg); };
}

Interval SummaryTable::summary(const std::string& fn, const Interval& input) {
    if (input.is_bottom()) {
        return Interval::bottom();
    }
    const auto f = std::find_if(functions_.begin(), functions_.end(), [&](const FunDef& d) { return d.name == fn; });
    if (f == functions_.end()) {
        throw std::invalid_argument("unknown function '" + fn + "'");
    }
    if (const auto it = memo_.find({fn, to_string(input)}); it != memo_.end()) {
        return it->second.output;
    }
    for (std::size_t i = active_.size(); i-- > 0;) {
        if (active_[i].function != fn) {
            continue;
        }
        const Interval widened = active_[i].input.widen(active_[i].input.join(input));
        if (widened == active_[i].input) {
            for (std::size_t j = i + 1; j < active_.size(); ++j) {
                active_[j].lowest_dependency = std::min(active_[j].lowest_dependency, i);
            }
            return active_[i].output;
        }
        if (const auto it = memo_.find({fn, to_string(widened)}); it != memo_.end()) {
            return it->second.output;
        }
        return compute(*f, widened);
    }
    return compute(*f, input);
}

Interval SummaryTable::eval_body(const FunDef& f, const Interval& input) {
    const IntervalEnv env = IntervalEnv::of(make_var_list({f.param}), {input});
    return eval_abstract(*f.body, env, oracle());
}

Interval SummaryTable::compute(const FunDef& f, const Interval& input) {
    const std::size_t self = active_.size();
    active_.push_back({f.name, input, Interval::bottom(), no_dependency});
    ++stats_.summary_contexts;

    // ascending: successive approximations from bottom, widened on the output
    Interval result;
    while (true) {
        ++stats_.ascending_steps;
        result = eval_body(f, input);
        Interval& out = active_[self].output;
        if (result.leq(out)) {
            break;
        }
        out = options_.widening ? out.widen(result) : out.join(result);
        ++stats_.widenings;
    }
    // descending: keep a narrowed output only when it is still a post-fixpoint
    Interval out = active_[self].output;
    for (int k = 0; k < options_.narrowing_budget && !(result == out); ++k) {
        const Interval candidate = out.narrow(result.meet(out));
        active_[self].output = candidate;
        const Interval check = eval_body(f, input);
        if (!check.leq(candidate)) {
            active_[self].output = out;
            break;
        }
        ++stats_.narrowing_steps;
        out = candidate;
        result = check;
    }

    const std::size_t dep = active_[self].lowest_dependency;
    active_.pop_back();
    if (dep == no_dependency || dep >= self) {
        memo_.insert_or_assign(std::pair{f.name, to_string(input)}, Entry{f.name, input, out});
    }
    return out;
}

std::vector<SummaryTable::Entry> SummaryTable::entries() const {
    std::vector<Entry> out;
    for (const auto& [key, e] : memo_) {
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
        if (a.function != b.function) {
            return a.function < b.function;
        }
        return std::pair{a.input.lo(), a.input.hi()} < std::pair{b.input.lo(), b.input.hi()};
    });
    return out;
}

Interval analyze_function(const std::string& fn, std::span<const FunDef> functions, const Interval& input,
                          FixpointOptions options) {
    SummaryTable table({functions.begin(), functions.end()}, std::move(options));
    return table.summary(fn, input);
}

IntervalEnv apply_command(const Command& c, const IntervalEnv& env, const CallOracle& calls) {
    if (env.is_bottom()) {
        return env;
    }
    switch (c.kind) {
    case Command::Kind::skip: return env;
    case Command::Kind::assume: return filter_abstract(*c.guard, env, calls);
    case Command::Kind::assign: {
        IntervalEnv out = env;
        out.set(c.target, eval_abstract(*c.value, env, calls));
        return out;
    }
    }
    return env;
}

SignEnv apply_command(const Command& c, const SignEnv& env, const CallOracle& calls) {
    if (env.is_bottom()) {
        return env;
    }
    switch (c.kind) {
    case Command::Kind::skip: return env;
    case Command::Kind::assume: return filter_sign(*c.guard, env, calls);
    case Command::Kind::assign: {
        SignEnv out = env;
        out.set(c.target, eval_sign(*c.value, env, calls));
        return out;
    }
    }
    return env;
}

IntervalEnv initial_interval_env(const Cfg& cfg, const InitRanges& ranges) {
    std::vector<Interval> vals;
    for (const auto& v : cfg.var_order) {
        const auto fixed = std::find_if(cfg.init.begin(), cfg.init.end(), [&](const auto& kv) { return kv.first == v; });
        if (fixed != cfg.init.end()) {
            vals.push_back(Interval::singleton(fixed->second));
        } else if (const auto it = ranges.find(v); it != ranges.end()) {
            vals.push_back(Interval::range(it->second.lo, it->second.hi));
        } else {
            vals.push_back(Interval::top());
        }
    }
    return IntervalEnv::of(make_var_list(cfg.var_order), std::move(vals));
}

SignEnv initial_sign_env(const Cfg& cfg, const InitRanges& ranges) {
    return to_sign_env(initial_interval_env(cfg, ranges));
}

namespace {

struct Ordering {
    std::vector<NodeId> rpo;
    std::vector<std::size_t> rank; // position in rpo, by node
    std::vector<bool> cut;         // widening point, by node
};

Ordering order_nodes(const Cfg& cfg) {
    const auto n = static_cast<std::size_t>(cfg.node_count);
    Ordering o;
    o.rank.assign(n, 0);
    o.cut.assign(n, false);
    enum { white, gray, black };
    std::vector<int> color(n, white);
    std::vector<NodeId> post;
    // iterative DFS; frame = (node, next out-edge position)
    std::vector<std::pair<NodeId, std::size_t>> stack{{Cfg::entry, 0}};
    color[Cfg::entry] = gray;
    while (!stack.empty()) {
        auto& [node, pos] = stack.back();
        const auto& outs = cfg.out_edges[static_cast<std::size_t>(node)];
        if (pos < outs.size()) {
            const NodeId dst = cfg.edges[static_cast<std::size_t>(outs[pos++])].dst;
            const auto d = static_cast<std::size_t>(dst);
            if (color[d] == gray) {
                o.cut[d] = true;
            } else if (color[d] == white) {
                color[d] = gray;
                stack.emplace_back(dst, 0);
            }
            continue;
        }
        color[static_cast<std::size_t>(node)] = black;
        post.push_back(node);
        stack.pop_back();
    }
    o.rpo.assign(post.rbegin(), post.rend());
    for (std::size_t i = 0; i < n; ++i) {
        if (color[i] == white) {
            o.rpo.push_back(static_cast<NodeId>(i));
        }
    }
    for (std::size_t i = 0; i < o.rpo.size(); ++i) {
        o.rank[static_cast<std::size_t>(o.rpo[i])] = i;
    }
    return o;
}

template <Lattice V>
Env<V> incoming(const Cfg& cfg, const std::vector<Env<V>>& envs, NodeId n, const Env<V>& entry_env,
                const CallOracle& calls) {
    Env<V> acc = n == Cfg::entry ? entry_env : Env<V>::bottom(entry_env.vars());
    for (const int e : cfg.in_edges[static_cast<std::size_t>(n)]) {
        const Edge& edge = cfg.edges[static_cast<std::size_t>(e)];
        acc = acc.join(apply_command(edge.cmd, envs[static_cast<std::size_t>(edge.src)], calls));
    }
    return acc;
}

template <Lattice V>
void trace_step(const FixpointOptions& opts, const char* phase, NodeId n, const Env<V>& before, const Env<V>& after,
                bool widened) {
    if (opts.trace) {
        opts.trace(std::string("fixpoint: phase=") + phase + " node=" + std::to_string(n) + " old=" +
                   to_string(before) + " new=" + to_string(after) + " widened=" + (widened ? "1" : "0"));
    }
}

template <Lattice V>
AnalysisResult<V> run(const Cfg& cfg, const Env<V>& entry_env, const FixpointOptions& opts) {
    if (entry_env.size() != cfg.var_order.size()) {
        throw std::invalid_argument("entry environment does not match the program variables");
    }
    AnalysisResult<V> r;
    r.entry_env = entry_env;
    FixpointOptions table_opts = opts;
    table_opts.trace = nullptr;
    r.summaries = std::make_shared<SummaryTable>(cfg.functions, table_opts);
    const CallOracle calls = r.summaries->oracle();
    const Ordering order = order_nodes(cfg);
    for (std::size_t i = 0; i < order.cut.size(); ++i) {
        if (order.cut[i]) {
            r.widening_points.push_back(static_cast<NodeId>(i));
        }
    }
    auto& X = r.envs;
    X.assign(static_cast<std::size_t>(cfg.node_count), Env<V>::bottom(entry_env.vars()));

    std::set<std::pair<std::size_t, NodeId>> worklist{{order.rank[Cfg::entry], Cfg::entry}};
    while (!worklist.empty()) {
        const NodeId n = worklist.begin()->second;
        worklist.erase(worklist.begin());
        const auto ni = static_cast<std::size_t>(n);
        const Env<V> fresh = incoming(cfg, X, n, entry_env, calls);
        const Env<V> old = X[ni];
        Env<V> next;
        bool widened = false;
        if (order.cut[ni]) {
            if (fresh.leq(old)) {
                continue;
            }
            next = opts.widening ? old.widen(fresh) : old.join(fresh);
            widened = opts.widening;
            r.stats.widenings += widened ? 1 : 0;
        } else {
            if (!old.leq(fresh)) {
                throw InternalError("value at node " + std::to_string(n) + " regressed from " + to_string(old) +
                                    " to " + to_string(fresh));
            }
            next = fresh;
        }
        ++r.stats.ascending_steps;
        trace_step(opts, "ascend", n, old, next, widened);
        if (!(next == old)) {
            X[ni] = std::move(next);
            for (const int e : cfg.out_edges[ni]) {
                const NodeId d = cfg.edges[static_cast<std::size_t>(e)].dst;
                worklist.insert({order.rank[static_cast<std::size_t>(d)], d});
            }
        }
    }

    for (int pass = 0; pass < opts.narrowing_budget; ++pass) {
        bool changed = false;
        for (const NodeId n : order.rpo) {
            const auto ni = static_cast<std::size_t>(n);
            const Env<V> fresh = incoming(cfg, X, n, entry_env, calls).meet(X[ni]);
            const Env<V> next = order.cut[ni] ? X[ni].narrow(fresh) : fresh;
            if (!(next == X[ni])) {
                ++r.stats.narrowing_steps;
                trace_step(opts, "descend", n, X[ni], next, false);
                X[ni] = next;
                changed = true;
            }
        }
        if (!changed) {
            break;
        }
    }
    const auto& st = r.summaries->stats();
    r.stats.ascending_steps += st.ascending_steps;
    r.stats.widenings += st.widenings;
    r.stats.narrowing_steps += st.narrowing_steps;
    r.stats.summary_contexts = st.summary_contexts;
    return r;
}

template <Lattice V>
bool post_fixpoint(const Cfg& cfg, const AnalysisResult<V>& r) {
    if (r.envs.size() != static_cast<std::size_t>(cfg.node_count)) {
        return false;
    }
    std::shared_ptr<SummaryTable> table = r.summaries ? r.summaries : std::make_shared<SummaryTable>(cfg.functions);
    const CallOracle calls = table->oracle();
    if (!r.entry_env.leq(r.envs[Cfg::entry])) {
        return false;
    }
    for (const auto& e : cfg.edges) {
        const auto post = apply_command(e.cmd, r.envs[static_cast<std::size_t>(e.src)], calls);
        if (!post.leq(r.envs[static_cast<std::size_t>(e.dst)])) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<NodeId> widening_points(const Cfg& cfg) {
    const Ordering o = order_nodes(cfg);
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < o.cut.size(); ++i) {
        if (o.cut[i]) {
            out.push_back(static_cast<NodeId>(i));
        }
    }
    return out;
}

AnalysisResult<Interval> analyze_cfg(const Cfg& cfg, const IntervalEnv& entry_env, FixpointOptions options) {
    return run(cfg, entry_env, options);
}

AnalysisResult<Sign> analyze_cfg(const Cfg& cfg, const SignEnv& entry_env, FixpointOptions options) {
    return run(cfg, entry_env, options);
}

bool check_post_fixpoint(const Cfg& cfg, const AnalysisResult<Interval>& r) { return post_fixpoint(cfg, r); }
bool check_post_fixpoint(const Cfg& cfg, const AnalysisResult<Sign>& r) { return post_fixpoint(cfg, r); }

} // namespace absint
