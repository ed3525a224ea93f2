// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/transfer.hpp"

namespace absint {

namespace {

Interval call_result(const CallOracle& calls, const std::string& fn, const Interval& arg) {
    if (arg.is_bottom()) {
        return Interval::bottom();
    }
    return calls ? calls(fn, arg) : Interval::top();
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

/// Largest interval of x with x * c inside `t`, for c != 0.
Interval divide_exact(const Interval& t, const Integer& c) {
    if (t.is_bottom()) {
        return t;
    }
    const Bound& lo = c > 0 ? t.lo() : t.hi();
    const Bound& hi = c > 0 ? t.hi() : t.lo();
    auto down = [&](const Bound& b) -> Bound {
        if (!b.is_finite()) {
            return c > 0 ? b : -b;
        }
        return floor_div(b.value(), c);
    };
    auto up = [&](const Bound& b) -> Bound {
        if (!b.is_finite()) {
            return c > 0 ? b : -b;
        }
        return ceil_div(b.value(), c);
    };
    return {up(lo), down(hi)};
}

/// Removes `v` from the ends of `i`.
Interval remove_point(const Interval& i, const Integer& v) {
    if (i.is_bottom()) {
        return i;
    }
    if (i.lo() == Bound(v)) {
        return {Bound(Integer(v + 1)), i.hi()};
    }
    if (i.hi() == Bound(v)) {
        return {i.lo(), Bound(Integer(v - 1))};
    }
    return i;
}

class Refiner {
  public:
    Refiner(IntervalEnv env, const CallOracle& calls) : env_(std::move(env)), calls_(calls) {}

    IntervalEnv filter(const BoolExpr& b, bool negated) {
        if (env_.is_bottom()) {
            return env_;
        }
        switch (b.kind) {
        case BoolExpr::Kind::constant:
            if (b.value == negated) {
                env_ = IntervalEnv::bottom(env_.vars());
            }
            return env_;
        case BoolExpr::Kind::negation: return filter(*b.left, !negated);
        case BoolExpr::Kind::compare:
            compare(negated ? negate(b.cmp) : b.cmp, *b.lhs, *b.rhs);
            return env_;
        case BoolExpr::Kind::conjunction:
        case BoolExpr::Kind::disjunction: {
            const bool is_and = (b.kind == BoolExpr::Kind::conjunction) != negated;
            if (is_and) {
                filter(*b.left, negated);
                return filter(*b.right, negated);
            }
            IntervalEnv l = Refiner(env_, calls_).filter(*b.left, negated);
            IntervalEnv r = Refiner(env_, calls_).filter(*b.right, negated);
            env_ = l.join(r);
            return env_;
        }
        }
        return env_;
    }

  private:
    void kill() { env_ = IntervalEnv::bottom(env_.vars()); }

    void compare(CmpOp op, const ArithExpr& lhs, const ArithExpr& rhs) {
        if (op == CmpOp::gt || op == CmpOp::ge) {
            compare(mirror(op), rhs, lhs);
            return;
        }
        for (int pass = 0; pass < 2 && !env_.is_bottom(); ++pass) {
            const Interval l = eval_abstract(lhs, env_, calls_);
            const Interval r = eval_abstract(rhs, env_, calls_);
            if (l.is_bottom() || r.is_bottom()) {
                kill();
                return;
            }
            Interval lt;
            Interval rt;
            switch (op) {
            case CmpOp::lt:
                lt = {Bound::minus_infinity(), r.hi() - Bound(1)};
                rt = {l.lo() + Bound(1), Bound::plus_infinity()};
                break;
            case CmpOp::le:
                lt = {Bound::minus_infinity(), r.hi()};
                rt = {l.lo(), Bound::plus_infinity()};
                break;
            case CmpOp::eq:
                lt = r;
                rt = l;
                break;
            case CmpOp::ne:
                lt = r.is_singleton() ? remove_point(l, r.lo().value()) : l;
                rt = l.is_singleton() ? remove_point(r, l.lo().value()) : r;
                if (l.is_singleton() && r.is_singleton() && l == r) {
                    kill();
                    return;
                }
                break;
            default: return;
            }
            if (!refine(lhs, lt) || !refine(rhs, rt)) {
                kill();
                return;
            }
        }
    }

    /// Narrows env_ so that `e` evaluates inside `target`; false when that is impossible.
    bool refine(const ArithExpr& e, const Interval& target) {
        const Interval cur = eval_abstract(e, env_, calls_);
        const Interval m = cur.meet(target);
        if (m.is_bottom()) {
            return false;
        }
        switch (e.kind) {
        case ArithExpr::Kind::variable: env_.set(e.name, m); return !env_.is_bottom();
        case ArithExpr::Kind::neg: return refine(*e.lhs, -m);
        case ArithExpr::Kind::binary: {
            const Interval a = eval_abstract(*e.lhs, env_, calls_);
            const Interval b = eval_abstract(*e.rhs, env_, calls_);
            switch (e.op) {
            case ArithOp::add:
                if (!refine(*e.lhs, m - b)) {
                    return false;
                }
                return refine(*e.rhs, m - eval_abstract(*e.lhs, env_, calls_));
            case ArithOp::sub:
                if (!refine(*e.lhs, m + b)) {
                    return false;
                }
                return refine(*e.rhs, eval_abstract(*e.lhs, env_, calls_) - m);
            case ArithOp::mul:
                if (b.is_singleton() && b.lo().value() != 0) {
                    return refine(*e.lhs, divide_exact(m, b.lo().value()));
                }
                if (a.is_singleton() && a.lo().value() != 0) {
                    return refine(*e.rhs, divide_exact(m, a.lo().value()));
                }
                return true;
            }
            return true;
        }
        default: return true;
        }
    }

    IntervalEnv env_;
    const CallOracle& calls_;
};

} // namespace

Interval eval_abstract(const ArithExpr& e, const IntervalEnv& env, const CallOracle& calls) {
    if (env.is_bottom()) {
        return Interval::bottom();
    }
    switch (e.kind) {
    case ArithExpr::Kind::constant: return Interval::singleton(e.value);
    case ArithExpr::Kind::variable: return env.get(e.name);
    case ArithExpr::Kind::call: return call_result(calls, e.name, eval_abstract(*e.lhs, env, calls));
    case ArithExpr::Kind::neg: return -eval_abstract(*e.lhs, env, calls);
    case ArithExpr::Kind::binary: {
        const Interval a = eval_abstract(*e.lhs, env, calls);
        const Interval b = eval_abstract(*e.rhs, env, calls);
        switch (e.op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        }
        break;
    }
    case ArithExpr::Kind::conditional: {
        const Interval t = eval_abstract(*e.lhs, filter_abstract(*e.cond, env, calls), calls);
        const Interval f = eval_abstract(*e.rhs, Refiner(env, calls).filter(*e.cond, true), calls);
        return t.join(f);
    }
    }
    return Interval::top();
}

IntervalEnv filter_abstract(const BoolExpr& guard, const IntervalEnv& env, const CallOracle& calls) {
    return Refiner(env, calls).filter(guard, false);
}

Interval sign_hull(Sign s) {
    switch (s.tag()) {
    case Sign::Tag::bottom: return Interval::bottom();
    case Sign::Tag::neg: return Interval::at_most(-1);
    case Sign::Tag::zero: return Interval::singleton(0);
    case Sign::Tag::pos: return Interval::at_least(1);
    case Sign::Tag::top: return Interval::top();
    }
    return Interval::top();
}

Sign sign_of(const Interval& i) {
    if (i.is_bottom()) {
        return Sign::bottom();
    }
    if (i.lo() > Bound(0)) {
        return Sign::pos();
    }
    if (i.hi() < Bound(0)) {
        return Sign::neg();
    }
    if (i.lo() == Bound(0) && i.hi() == Bound(0)) {
        return Sign::zero();
    }
    return Sign::top();
}

IntervalEnv to_interval_env(const SignEnv& env) {
    if (env.is_bottom()) {
        return IntervalEnv::bottom(env.vars());
    }
    std::vector<Interval> vals;
    for (const auto& s : env.values()) {
        vals.push_back(sign_hull(s));
    }
    return IntervalEnv::of(env.vars(), std::move(vals));
}

SignEnv to_sign_env(const IntervalEnv& env) {
    if (env.is_bottom()) {
        return SignEnv::bottom(env.vars());
    }
    std::vector<Sign> vals;
    for (const auto& i : env.values()) {
        vals.push_back(sign_of(i));
    }
    return SignEnv::of(env.vars(), std::move(vals));
}

Sign eval_sign(const ArithExpr& e, const SignEnv& env, const CallOracle& calls) {
    if (env.is_bottom()) {
        return Sign::bottom();
    }
    switch (e.kind) {
    case ArithExpr::Kind::constant: return Sign::of(e.value);
    case ArithExpr::Kind::variable: return env.get(e.name);
    case ArithExpr::Kind::call: return sign_of(call_result(calls, e.name, sign_hull(eval_sign(*e.lhs, env, calls))));
    case ArithExpr::Kind::neg: return sign_neg(eval_sign(*e.lhs, env, calls));
    case ArithExpr::Kind::binary: {
        const Sign a = eval_sign(*e.lhs, env, calls);
        const Sign b = eval_sign(*e.rhs, env, calls);
        switch (e.op) {
        case ArithOp::add: return sign_add(a, b);
        case ArithOp::sub: return sign_sub(a, b);
        case ArithOp::mul: return sign_mul(a, b);
        }
        break;
    }
    case ArithExpr::Kind::conditional: {
        const Sign t = eval_sign(*e.lhs, filter_sign(*e.cond, env, calls), calls);
        const Sign f = eval_sign(*e.rhs, filter_sign(*expr::negation(e.cond), env, calls), calls);
        return t.join(f);
    }
    }
    return Sign::top();
}

SignEnv filter_sign(const BoolExpr& guard, const SignEnv& env, const CallOracle& calls) {
    if (env.is_bottom()) {
        return env;
    }
    const SignEnv refined = to_sign_env(filter_abstract(guard, to_interval_env(env), calls));
    return refined.meet(env);
}

} // namespace absint
