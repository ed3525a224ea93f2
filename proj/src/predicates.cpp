// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/predicates.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "absint/linear.hpp"

namespace absint {

PredicateTable::PredicateTable() { add(make_predicate(expr::truth(true))); }

PredicateTable::PredicateTable(const std::vector<Predicate>& preds) {
    for (const auto& p : preds) {
        add(p);
    }
    if (preds_.empty()) {
        add(make_predicate(expr::truth(true)));
    }
}

bool PredicateTable::add(Predicate p) {
    if (!keys_.insert(predicate_key(p.expr)).second) {
        return false;
    }
    p.id = static_cast<int>(preds_.size()) + 1;
    preds_.push_back(std::move(p));
    return true;
}

bool PredicateTable::contains(const BoolPtr& b) const { return keys_.count(predicate_key(b)) > 0; }

std::vector<std::string> PredicateTable::texts() const {
    std::vector<std::string> out;
    for (const auto& p : preds_) {
        out.push_back(p.text);
    }
    return out;
}

Predicate make_predicate(BoolPtr b) {
    Predicate p;
    p.text = to_string(*b);
    p.expr = std::move(b);
    return p;
}

namespace {

void atoms(const BoolPtr& b, std::vector<BoolPtr>& out) {
    switch (b->kind) {
    case BoolExpr::Kind::compare: out.push_back(b); break;
    case BoolExpr::Kind::negation: atoms(b->left, out); break;
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction:
        atoms(b->left, out);
        atoms(b->right, out);
        break;
    case BoolExpr::Kind::constant: break;
    }
}

bool mentions(const BoolExpr& b, const std::string& var) {
    std::set<std::string> vs;
    collect_vars(b, vs);
    return vs.count(var) > 0;
}

/// Replaces maximal call subterms of `e` by fresh variables "$c<n>", recording the calls.
ArithPtr lift_calls(const ArithPtr& e, std::vector<std::pair<std::string, ArithPtr>>& lifted) {
    if (!has_call(*e)) {
        return e;
    }
    switch (e->kind) {
    case ArithExpr::Kind::call:
    case ArithExpr::Kind::conditional: {
        std::string v = "$c" + std::to_string(lifted.size());
        lifted.emplace_back(v, e);
        return expr::variable(std::move(v));
    }
    case ArithExpr::Kind::neg: return expr::neg(lift_calls(e->lhs, lifted));
    case ArithExpr::Kind::binary: {
        ArithPtr l = lift_calls(e->lhs, lifted);
        return expr::binary(e->op, l, lift_calls(e->rhs, lifted));
    }
    default: return e;
    }
}

BoolPtr within(const std::string& v, const Interval& i) {
    std::vector<BoolPtr> parts;
    if (i.is_bottom()) {
        return expr::truth(false);
    }
    if (i.lo().is_finite()) {
        parts.push_back(expr::compare(CmpOp::ge, expr::variable(v), expr::constant(i.lo().value())));
    }
    if (i.hi().is_finite()) {
        parts.push_back(expr::compare(CmpOp::le, expr::variable(v), expr::constant(i.hi().value())));
    }
    return expr::conj_all(parts);
}

BoolPtr literal(const BoolPtr& p, bool value) { return value ? p : expr::negation(p); }

} // namespace

PredicateTable initial_predicates(const Cfg& cfg) {
    PredicateTable pt;
    for (const auto& e : cfg.edges) {
        if (e.cmd.kind != Command::Kind::assume) {
            continue;
        }
        std::vector<BoolPtr> as;
        atoms(e.cmd.guard, as);
        for (const auto& a : as) {
            if (normalize(a)->kind == BoolExpr::Kind::constant) {
                continue;
            }
            pt.add(make_predicate(a));
        }
    }
    return pt;
}

std::string bits_to_string(Valuation32 bits, std::size_t k) {
    std::string out;
    for (std::size_t i = 0; i < k; ++i) {
        out += ((bits >> i) & 1u) != 0 ? '1' : '0';
    }
    return out;
}

Valuation32 abstract_state_of(const ConcreteState& s, const Cfg& cfg, const PredicateTable& pt,
                              const EvalOptions& options) {
    const Evaluator ev(cfg.functions, options);
    const Valuation env{cfg.var_order, s.env};
    Valuation32 bits = 0;
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (ev.holds(*pt[i].expr, env)) {
            bits |= Valuation32{1} << i;
        }
    }
    return bits;
}

Abstractor::Abstractor(const Cfg& cfg, const PredicateTable& pt, const InitRanges& ranges, AbstractionOptions options)
    : cfg_(cfg), pt_(pt), summaries_(std::make_shared<SummaryTable>(cfg.functions)),
      checker_(cfg_.functions, summaries_->oracle(), options.entail) {
    if (pt.size() > options.max_predicates || pt.size() > 32) {
        throw PredicateLimitError("predicate table has " + std::to_string(pt.size()) +
                                  " predicates; explicit abstraction is limited to " +
                                  std::to_string(options.max_predicates));
    }
    std::vector<BoolPtr> parts;
    for (const auto& v : cfg.var_order) {
        const auto declared = std::find_if(cfg.init.begin(), cfg.init.end(), [&](const auto& p) { return p.first == v; });
        if (declared != cfg.init.end()) {
            parts.push_back(expr::compare(CmpOp::eq, expr::variable(v), expr::constant(declared->second)));
        } else if (const auto r = ranges.find(v); r != ranges.end()) {
            parts.push_back(within(v, Interval::range(r->second.lo, r->second.hi)));
        }
    }
    init_ = expr::conj_all(parts);
}

BoolPtr Abstractor::cube(Valuation32 bits) const {
    std::vector<BoolPtr> parts;
    for (std::size_t i = 0; i < pt_.size(); ++i) {
        parts.push_back(literal(pt_[i].expr, ((bits >> i) & 1u) != 0));
    }
    return expr::conj_all(parts);
}

std::vector<Valuation32> Abstractor::initial_valuations() const {
    std::vector<Valuation32> out;
    // depth-first over bit prefixes, pruning prefixes that contradict the initial constraint
    std::function<void(std::size_t, Valuation32, const BoolPtr&)> go = [&](std::size_t i, Valuation32 bits,
                                                                          const BoolPtr& f) {
        if (checker_.unsatisfiable(f)) {
            return;
        }
        if (i == pt_.size()) {
            out.push_back(bits);
            return;
        }
        go(i + 1, bits, expr::conj(f, literal(pt_[i].expr, false)));
        go(i + 1, bits | (Valuation32{1} << i), expr::conj(f, literal(pt_[i].expr, true)));
    };
    go(0, 0, init_);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Valuation32> Abstractor::post(const Command& cmd, Valuation32 src) const {
    switch (cmd.kind) {
    case Command::Kind::skip: return {src};
    case Command::Kind::assume:
        if (checker_.unsatisfiable(expr::conj(cube(src), cmd.guard))) {
            return {};
        }
        return {src};
    case Command::Kind::assign: break;
    }
    BoolPtr pre = cube(src);
    if (checker_.unsatisfiable(pre)) {
        return {};
    }
    std::vector<std::pair<std::string, ArithPtr>> lifted;
    const ArithPtr rhs = lift_calls(cmd.value, lifted);
    if (!lifted.empty()) {
        // calls become fresh variables bounded by their interval summaries under the source cube
        std::vector<std::string> names = cfg_.var_order;
        const IntervalEnv env = checker_.propagate(pre, make_var_list(names));
        std::vector<BoolPtr> parts{pre};
        for (const auto& [v, call] : lifted) {
            parts.push_back(within(v, eval_abstract(*call, env, summaries_->oracle())));
        }
        pre = expr::conj_all(parts);
    }
    Valuation32 fixed = 0;
    std::vector<std::size_t> open;
    std::vector<BoolPtr> next(pt_.size());
    for (std::size_t i = 0; i < pt_.size(); ++i) {
        const BoolPtr& p = pt_[i].expr;
        if (!mentions(*p, cmd.target)) {
            fixed |= src & (Valuation32{1} << i);
            continue;
        }
        next[i] = substitute(p, cmd.target, rhs);
        if (checker_.prove(pre, next[i])) {
            fixed |= Valuation32{1} << i;
        } else if (!checker_.prove(pre, expr::negation(next[i]))) {
            open.push_back(i);
        }
    }
    std::vector<Valuation32> out;
    for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << open.size()); ++combo) {
        Valuation32 t = fixed;
        std::vector<BoolPtr> parts{pre};
        for (std::size_t j = 0; j < open.size(); ++j) {
            const bool v = ((combo >> j) & 1u) != 0;
            if (v) {
                t |= Valuation32{1} << open[j];
            }
            parts.push_back(literal(next[open[j]], v));
        }
        if (open.size() < 2 || !checker_.unsatisfiable(expr::conj_all(parts))) {
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Valuation32> abstract_post(const Command& cmd, Valuation32 src, const PredicateTable& pt,
                                       const Cfg& cfg) {
    return Abstractor(cfg, pt).post(cmd, src);
}

std::optional<std::size_t> AbstractTS::find(const AbstractState& s) const {
    const auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states.begin());
}

std::string AbstractTS::id(std::size_t i) const {
    return "n" + std::to_string(states[i].node) + ":" + bits_to_string(states[i].bits, k);
}

AbstractTS build_abstract_ts(const Abstractor& abs) {
    const Cfg& cfg = abs.cfg();
    std::set<AbstractState> seen;
    std::deque<AbstractState> work;
    std::vector<std::tuple<AbstractState, int, AbstractState>> raw;
    std::map<std::pair<int, Valuation32>, std::vector<Valuation32>> cache;
    std::vector<AbstractState> init;
    for (const Valuation32 b : abs.initial_valuations()) {
        const AbstractState s{Cfg::entry, b};
        init.push_back(s);
        if (seen.insert(s).second) {
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        const AbstractState s = work.front();
        work.pop_front();
        for (const int e : cfg.out_edges[static_cast<std::size_t>(s.node)]) {
            const Edge& edge = cfg.edges[static_cast<std::size_t>(e)];
            auto [it, fresh] = cache.try_emplace({e, s.bits});
            if (fresh) {
                it->second = abs.post(edge.cmd, s.bits);
            }
            for (const Valuation32 t : it->second) {
                const AbstractState d{edge.dst, t};
                raw.emplace_back(s, e, d);
                if (seen.insert(d).second) {
                    work.push_back(d);
                }
            }
        }
    }
    AbstractTS ts;
    ts.k = abs.table().size();
    ts.states.assign(seen.begin(), seen.end());
    for (const auto& s : init) {
        ts.initial.push_back(*ts.find(s));
    }
    std::sort(ts.initial.begin(), ts.initial.end());
    for (const auto& [s, e, d] : raw) {
        ts.transitions.push_back({*ts.find(s), e, *ts.find(d)});
    }
    std::sort(ts.transitions.begin(), ts.transitions.end());
    for (std::size_t i = 0; i < ts.states.size(); ++i) {
        if (ts.states[i].node == Cfg::error) {
            ts.bad.push_back(i);
        }
    }
    return ts;
}

AbstractTS build_abstract_ts(const Cfg& cfg, const PredicateTable& pt, const InitRanges& ranges,
                             AbstractionOptions options) {
    return build_abstract_ts(Abstractor(cfg, pt, ranges, std::move(options)));
}

TransitionSystem to_transition_system(const AbstractTS& ts) {
    TransitionSystem out;
    for (std::size_t i = 0; i < ts.states.size(); ++i) {
        out.states.insert(ts.id(i));
    }
    for (const auto i : ts.initial) {
        out.initial.insert(ts.id(i));
    }
    for (const auto& t : ts.transitions) {
        const std::string label = "e" + std::to_string(t.edge);
        out.alphabet.insert(label);
        out.transitions.insert({ts.id(t.src), label, ts.id(t.dst)});
    }
    return out;
}

} // namespace absint
