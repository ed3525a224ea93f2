// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/entailment.hpp"

#include <algorithm>
#include <set>

#include "absint/concrete.hpp"
#include "absint/linear.hpp"

namespace absint {

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::valid: return "valid";
    case Verdict::invalid: return "invalid";
    case Verdict::unknown: return "unknown";
    }
    return "?";
}

namespace {

std::vector<std::string> free_vars(const BoolPtr& f) {
    std::set<std::string> s;
    collect_vars(*f, s);
    return {s.begin(), s.end()};
}

/// Number of points in the box, or nullopt if some side is infinite or the count exceeds `cap`.
std::optional<std::size_t> box_size(const IntervalEnv& box, std::size_t cap) {
    Integer n = 1;
    for (const auto& i : box.values()) {
        if (!i.is_finite()) {
            return std::nullopt;
        }
        n *= i.hi().value() - i.lo().value() + 1;
        if (n > cap) {
            return std::nullopt;
        }
    }
    return static_cast<std::size_t>(n);
}

/// Conjuncts that bound the same linear term inconsistently, or an atom next to its negation.
bool congruence_conflict(const BoolPtr& f) {
    std::vector<BoolPtr> cs;
    conjuncts(normalize(f), cs);
    std::map<std::string, Interval> bounds;
    std::map<std::string, std::set<Integer>> excluded;
    std::set<std::string> seen;
    for (const auto& c : cs) {
        if (c->kind == BoolExpr::Kind::constant && !c->value) {
            return true;
        }
        seen.insert(to_string(*c));
        if (c->kind != BoolExpr::Kind::compare || c->rhs->kind != ArithExpr::Kind::constant) {
            continue;
        }
        const std::string term = to_string(*c->lhs);
        const Integer& k = c->rhs->value;
        Interval allowed = Interval::top();
        switch (c->cmp) {
        case CmpOp::le: allowed = Interval::at_most(k); break;
        case CmpOp::ge: allowed = Interval::at_least(k); break;
        case CmpOp::eq: allowed = Interval::singleton(k); break;
        case CmpOp::ne: excluded[term].insert(k); break;
        default: break;
        }
        const auto [it, fresh] = bounds.try_emplace(term, allowed);
        if (!fresh) {
            it->second = it->second.meet(allowed);
        }
    }
    for (const auto& [term, range] : bounds) {
        if (range.is_bottom() ||
            (range.is_singleton() && excluded[term].count(range.lo().value()) > 0)) {
            return true;
        }
    }
    for (const auto& c : cs) {
        if (seen.count(to_string(*normalize(expr::negation(c)))) > 0) {
            return true;
        }
    }
    return false;
}

} // namespace

Entailment::Entailment(std::span<const FunDef> functions, CallOracle calls, EntailOptions options)
    : functions_(functions), calls_(std::move(calls)), options_(std::move(options)) {}

IntervalEnv Entailment::propagate(const BoolPtr& f, const VarList& vars) const {
    IntervalEnv env = IntervalEnv::top(vars);
    for (int round = 0; round < options_.propagation_rounds; ++round) {
        IntervalEnv next = filter_abstract(*f, env, calls_);
        if (next == env) {
            break;
        }
        env = std::move(next);
    }
    return env;
}

bool Entailment::syntactic(const BoolPtr& antecedent, const BoolPtr& consequent) const {
    const BoolPtr c = normalize(consequent);
    const BoolPtr a = normalize(antecedent);
    if (c->kind == BoolExpr::Kind::constant && c->value) {
        return true;
    }
    if (a->kind == BoolExpr::Kind::constant && !a->value) {
        return true;
    }
    std::vector<BoolPtr> as;
    conjuncts(a, as);
    std::vector<BoolPtr> cs;
    conjuncts(c, cs);
    return std::all_of(cs.begin(), cs.end(), [&](const BoolPtr& ci) {
        return std::any_of(as.begin(), as.end(), [&](const BoolPtr& ai) { return equal(*ai, *ci); });
    });
}

std::size_t Entailment::for_each_model(const BoolPtr& f, const std::vector<std::string>& vars,
                                       const std::function<bool(std::span<const Integer>)>& visit,
                                       std::size_t max_points) const {
    const IntervalEnv box = propagate(f, make_var_list(vars));
    if (box.is_bottom()) {
        return 0;
    }
    const Interval clamp = Interval::range(-options_.bound, options_.bound);
    std::vector<Integer> lo, hi;
    for (const auto& i : box.values()) {
        const Interval c = i.meet(clamp);
        if (c.is_bottom()) {
            return 0;
        }
        lo.push_back(c.lo().value());
        hi.push_back(c.hi().value());
    }
    const Evaluator ev(functions_, EvalOptions{1000, OverflowPolicy::unbounded});
    std::vector<Integer> point = lo;
    std::size_t tried = 0;
    while (tried < max_points) {
        ++tried;
        bool sat = false;
        try {
            sat = ev.holds(*f, Valuation{vars, point});
        } catch (const DivergenceError&) {
        }
        if (sat && !visit(point)) {
            break;
        }
        // odometer, last variable fastest
        std::size_t k = point.size();
        while (k > 0) {
            --k;
            if (point[k] < hi[k]) {
                ++point[k];
                break;
            }
            point[k] = lo[k];
            if (k == 0) {
                return tried;
            }
        }
        if (point.empty()) {
            break;
        }
    }
    return tried;
}

bool Entailment::prove(const BoolPtr& antecedent, const BoolPtr& consequent) const {
    if (syntactic(antecedent, consequent)) {
        return true;
    }
    const BoolPtr f = expr::conj(antecedent, expr::negation(consequent));
    if (congruence_conflict(f)) {
        return true;
    }
    const auto vars = free_vars(f);
    const IntervalEnv box = propagate(f, make_var_list(vars));
    if (box.is_bottom()) {
        return true;
    }
    // A finite propagated box inside the search bound contains every model, so exhausting it
    // proves validity.
    const Interval clamp = Interval::range(-options_.bound, options_.bound);
    const auto n = box_size(box, options_.exhaustive_limit);
    if (!n || !std::all_of(box.values().begin(), box.values().end(),
                           [&](const Interval& i) { return i.leq(clamp); })) {
        return false;
    }
    bool found = false;
    for_each_model(f, vars, [&](std::span<const Integer>) { return !(found = true); }, *n + 1);
    return !found;
}

EntailResult Entailment::check(const BoolPtr& antecedent, const BoolPtr& consequent) const {
    if (syntactic(antecedent, consequent)) {
        return {Verdict::valid, {}};
    }
    const BoolPtr f = expr::conj(antecedent, expr::negation(consequent));
    if (congruence_conflict(f)) {
        return {Verdict::valid, {}};
    }
    const auto vars = free_vars(f);
    const IntervalEnv box = propagate(f, make_var_list(vars));
    if (box.is_bottom()) {
        return {Verdict::valid, {}};
    }
    EntailResult out;
    const std::size_t tried = for_each_model(
        f, vars,
        [&](std::span<const Integer> p) {
            out.verdict = Verdict::invalid;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                out.witness[vars[i]] = p[i];
            }
            return false;
        },
        options_.max_points);
    if (out.verdict == Verdict::invalid) {
        return out;
    }
    // Exhausted a finite box lying inside the witness bound: no model exists anywhere.
    const Interval clamp = Interval::range(-options_.bound, options_.bound);
    const bool inside = std::all_of(box.values().begin(), box.values().end(),
                                    [&](const Interval& i) { return i.leq(clamp); });
    const auto n = box_size(box, options_.max_points);
    if (inside && n && tried == *n) {
        return {Verdict::valid, {}};
    }
    return {};
}

EntailResult entails(const BoolPtr& antecedent, const BoolPtr& consequent) {
    return Entailment().check(antecedent, consequent);
}

} // namespace absint
