// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/concrete.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace absint {

const Integer& Valuation::lookup(const std::string& v) const {
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i] == v) {
            return values[i];
        }
    }
    throw EvalError("unknown variable '" + v + "'");
}

struct Evaluator::Frame {
    const Valuation* globals = nullptr;
    const std::string* param = nullptr;
    const Integer* arg = nullptr;

    const Integer& lookup(const std::string& v) const {
        if (param != nullptr) {
            if (v == *param) {
                return *arg;
            }
            throw EvalError("unknown variable '" + v + "' in function body");
        }
        return globals->lookup(v);
    }
};

Evaluator::Evaluator(std::span<const FunDef> functions, EvalOptions options)
    : functions_(functions), options_(options) {}

Integer Evaluator::eval(const ArithExpr& e, const Valuation& env) const {
    Frame f;
    f.globals = &env;
    return eval(e, f, 0);
}

bool Evaluator::holds(const BoolExpr& b, const Valuation& env) const {
    Frame f;
    f.globals = &env;
    return holds(b, f, 0);
}

Integer Evaluator::call(const std::string& fn, const Integer& arg) const { return call(fn, arg, 0); }

Integer Evaluator::call(const std::string& fn, const Integer& arg, std::size_t depth) const {
    if (depth >= options_.recursion_limit) {
        throw DivergenceError("recursion depth " + std::to_string(options_.recursion_limit) + " exceeded in '" + fn +
                              "'");
    }
    const auto it = std::find_if(functions_.begin(), functions_.end(), [&](const FunDef& f) { return f.name == fn; });
    if (it == functions_.end()) {
        throw EvalError("unknown function '" + fn + "'");
    }
    Frame f;
    f.param = &it->param;
    f.arg = &arg;
    return eval(*it->body, f, depth + 1);
}

Integer Evaluator::eval(const ArithExpr& e, const Frame& f, std::size_t depth) const {
    switch (e.kind) {
    case ArithExpr::Kind::constant: return e.value;
    case ArithExpr::Kind::variable: return f.lookup(e.name);
    case ArithExpr::Kind::call: return call(e.name, eval(*e.lhs, f, depth), depth);
    case ArithExpr::Kind::neg: return apply_overflow(-eval(*e.lhs, f, depth), options_.overflow);
    case ArithExpr::Kind::binary: {
        Integer a = eval(*e.lhs, f, depth);
        Integer b = eval(*e.rhs, f, depth);
        switch (e.op) {
        case ArithOp::add: return apply_overflow(a + b, options_.overflow);
        case ArithOp::sub: return apply_overflow(a - b, options_.overflow);
        case ArithOp::mul: return apply_overflow(a * b, options_.overflow);
        }
        break;
    }
    case ArithExpr::Kind::conditional:
        return holds(*e.cond, f, depth) ? eval(*e.lhs, f, depth) : eval(*e.rhs, f, depth);
    }
    throw EvalError("malformed expression");
}

bool Evaluator::holds(const BoolExpr& b, const Frame& f, std::size_t depth) const {
    switch (b.kind) {
    case BoolExpr::Kind::constant: return b.value;
    case BoolExpr::Kind::compare: return compare_values(b.cmp, eval(*b.lhs, f, depth), eval(*b.rhs, f, depth));
    case BoolExpr::Kind::negation: return !holds(*b.left, f, depth);
    case BoolExpr::Kind::conjunction: return holds(*b.left, f, depth) && holds(*b.right, f, depth);
    case BoolExpr::Kind::disjunction: return holds(*b.left, f, depth) || holds(*b.right, f, depth);
    }
    throw EvalError("malformed boolean expression");
}

std::string to_string(const ConcreteState& s, const Cfg& cfg) {
    std::ostringstream os;
    os << 'n' << s.node << '{';
    for (size_t i = 0; i < s.env.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        os << (i < cfg.var_order.size() ? cfg.var_order[i] : "?") << '=' << s.env[i];
    }
    os << '}';
    return os.str();
}

static bool execute(const Cfg& cfg, const Command& cmd, const ConcreteState& s, ConcreteState& out,
                    const Evaluator& ev) {
    const Valuation env{cfg.var_order, s.env};
    switch (cmd.kind) {
    case Command::Kind::skip: out.env = s.env; return true;
    case Command::Kind::assume:
        if (!ev.holds(*cmd.guard, env)) {
            return false;
        }
        out.env = s.env;
        return true;
    case Command::Kind::assign: {
        const int idx = cfg.var_index(cmd.target);
        if (idx < 0) {
            throw EvalError("unknown variable '" + cmd.target + "'");
        }
        Integer v = ev.eval(*cmd.value, env);
        out.env = s.env;
        out.env[static_cast<size_t>(idx)] = std::move(v);
        return true;
    }
    }
    return false;
}

std::vector<Successor> step(const Cfg& cfg, const ConcreteState& s, const Evaluator& ev) {
    std::vector<Successor> out;
    for (const int e : cfg.out_edges.at(static_cast<size_t>(s.node))) {
        const Edge& edge = cfg.edges[static_cast<size_t>(e)];
        Successor succ;
        succ.edge = e;
        succ.state.node = edge.dst;
        if (execute(cfg, edge.cmd, s, succ.state, ev)) {
            out.push_back(std::move(succ));
        }
    }
    return out;
}

std::vector<ConcreteState> initial_states(const Cfg& cfg, const InitRanges& ranges) {
    std::vector<IntRange> per_var;
    for (const auto& v : cfg.var_order) {
        const auto fixed =
            std::find_if(cfg.init.begin(), cfg.init.end(), [&](const auto& kv) { return kv.first == v; });
        if (fixed != cfg.init.end()) {
            per_var.push_back({fixed->second, fixed->second});
        } else if (const auto it = ranges.find(v); it != ranges.end()) {
            per_var.push_back(it->second);
        } else {
            per_var.push_back({0, 0});
        }
    }
    std::vector<ConcreteState> out;
    for (const auto& r : per_var) {
        if (r.lo > r.hi) {
            return out;
        }
    }
    ConcreteState cur;
    cur.node = Cfg::entry;
    cur.env.reserve(per_var.size());
    for (const auto& r : per_var) {
        cur.env.push_back(r.lo);
    }
    // Odometer over the product of ranges; the last variable varies fastest.
    while (true) {
        out.push_back(cur);
        size_t i = per_var.size();
        while (i > 0) {
            --i;
            if (cur.env[i] < per_var[i].hi) {
                ++cur.env[i];
                break;
            }
            cur.env[i] = per_var[i].lo;
            if (i == 0) {
                return out;
            }
        }
        if (per_var.empty()) {
            return out;
        }
    }
}

std::optional<std::size_t> ConcreteSystem::find(const ConcreteState& s) const {
    const auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states.begin());
}

ConcreteSystem enumerate_reachable(const Cfg& cfg, const InitRanges& ranges, std::size_t limit,
                                   const EvalOptions& options) {
    const Evaluator ev(cfg.functions, options);
    std::map<ConcreteState, std::size_t> index; // discovery order
    std::vector<ConcreteState> found;
    std::vector<std::size_t> init_ids;
    std::deque<std::size_t> queue;
    bool truncated = false;

    auto discover = [&](const ConcreteState& s) -> std::optional<std::size_t> {
        if (const auto it = index.find(s); it != index.end()) {
            return it->second;
        }
        if (found.size() >= limit) {
            truncated = true;
            return std::nullopt;
        }
        const std::size_t id = found.size();
        index.emplace(s, id);
        found.push_back(s);
        queue.push_back(id);
        return id;
    };

    for (const auto& s : initial_states(cfg, ranges)) {
        if (const auto id = discover(s)) {
            init_ids.push_back(*id);
        }
    }

    struct RawStep {
        std::size_t src;
        int edge;
        std::size_t dst;
    };
    std::vector<RawStep> raw;
    std::vector<std::size_t> divergent_raw;
    while (!queue.empty() && !truncated) {
        const std::size_t id = queue.front();
        queue.pop_front();
        std::vector<Successor> succs;
        try {
            succs = step(cfg, found[id], ev);
        } catch (const DivergenceError&) {
            divergent_raw.push_back(id);
            continue;
        }
        for (auto& succ : succs) {
            const auto dst = discover(succ.state);
            if (!dst) {
                break;
            }
            raw.push_back({id, succ.edge, *dst});
        }
    }

    // Canonical numbering: sorted by (node, env).
    std::vector<std::size_t> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
    std::vector<std::size_t> rank(found.size());
    ConcreteSystem sys;
    sys.truncated = truncated;
    sys.states.reserve(found.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank[order[r]] = r;
        sys.states.push_back(std::move(found[order[r]]));
    }
    for (const auto id : init_ids) {
        sys.initial.push_back(rank[id]);
    }
    std::sort(sys.initial.begin(), sys.initial.end());
    for (const auto& st : raw) {
        sys.transitions.push_back({rank[st.src], st.edge, rank[st.dst]});
    }
    std::sort(sys.transitions.begin(), sys.transitions.end(), [](const auto& a, const auto& b) {
        return std::tie(a.src, a.edge, a.dst) < std::tie(b.src, b.edge, b.dst);
    });
    for (const auto id : divergent_raw) {
        sys.divergent.push_back(rank[id]);
    }
    std::sort(sys.divergent.begin(), sys.divergent.end());
    return sys;
}

TransitionSystem to_transition_system(const ConcreteSystem& sys) {
    TransitionSystem ts;
    auto name = [](std::size_t i) { return "s" + std::to_string(i); };
    for (std::size_t i = 0; i < sys.states.size(); ++i) {
        ts.states.insert(name(i));
    }
    for (const auto i : sys.initial) {
        ts.initial.insert(name(i));
    }
    for (const auto& t : sys.transitions) {
        const std::string label = "e" + std::to_string(t.edge);
        ts.alphabet.insert(label);
        ts.transitions.insert({name(t.src), label, name(t.dst)});
    }
    return ts;
}

ReplayResult replay_trace(const Cfg& cfg, std::span<const int> path, const ConcreteState& init, const Evaluator& ev) {
    Trace trace;
    ConcreteState cur = init;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const int e = path[i];
        if (e < 0 || static_cast<std::size_t>(e) >= cfg.edges.size()) {
            throw std::invalid_argument("edge index " + std::to_string(e) + " out of range");
        }
        const Edge& edge = cfg.edges[static_cast<std::size_t>(e)];
        if (edge.src != cur.node) {
            throw std::invalid_argument("edge e" + std::to_string(e) + " does not leave node " +
                                        std::to_string(cur.node));
        }
        ConcreteState next;
        next.node = edge.dst;
        bool ok = false;
        try {
            ok = execute(cfg, edge.cmd, cur, next, ev);
        } catch (const DivergenceError&) {
            return Infeasible{i, cur, true};
        }
        if (!ok) {
            return Infeasible{i, cur, false};
        }
        trace.steps.push_back({cur, e, next});
        cur = std::move(next);
    }
    return trace;
}

} // namespace absint
