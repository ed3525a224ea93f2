// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/linear.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace absint {

namespace {

void add_scaled(LinearExpr& acc, const LinearExpr& e, const Integer& k) {
    for (const auto& [v, c] : e.coeffs) {
        Integer& slot = acc.coeffs[v];
        slot += c * k;
        if (slot == 0) {
            acc.coeffs.erase(v);
        }
    }
    acc.constant += e.constant * k;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

ArithPtr render(const LinearExpr& e) {
    ArithPtr out;
    for (const auto& [v, c] : e.coeffs) {
        const Integer mag = c < 0 ? Integer(-c) : c;
        ArithPtr term = mag == 1 ? expr::variable(v) : expr::mul(expr::constant(mag), expr::variable(v));
        if (!out) {
            out = c < 0 ? expr::neg(term) : term;
        } else {
            out = c < 0 ? expr::sub(out, term) : expr::add(out, term);
        }
    }
    return out;
}

} // namespace

std::optional<LinearExpr> linearize(const ArithExpr& e) {
    switch (e.kind) {
    case ArithExpr::Kind::constant: return LinearExpr{{}, e.value};
    case ArithExpr::Kind::variable: return LinearExpr{{{e.name, Integer(1)}}, Integer(0)};
    case ArithExpr::Kind::neg: {
        auto a = linearize(*e.lhs);
        if (!a) {
            return std::nullopt;
        }
        LinearExpr out;
        add_scaled(out, *a, -1);
        return out;
    }
    case ArithExpr::Kind::binary: {
        auto a = linearize(*e.lhs);
        auto b = linearize(*e.rhs);
        if (!a || !b) {
            return std::nullopt;
        }
        LinearExpr out;
        switch (e.op) {
        case ArithOp::add:
            add_scaled(out, *a, 1);
            add_scaled(out, *b, 1);
            return out;
        case ArithOp::sub:
            add_scaled(out, *a, 1);
            add_scaled(out, *b, -1);
            return out;
        case ArithOp::mul:
            if (a->coeffs.empty()) {
                add_scaled(out, *b, a->constant);
                return out;
            }
            if (b->coeffs.empty()) {
                add_scaled(out, *a, b->constant);
                return out;
            }
            return std::nullopt;
        }
        return std::nullopt;
    }
    default: return std::nullopt;
    }
}

BoolPtr normalize_atom(const BoolPtr& b) {
    if (b->kind != BoolExpr::Kind::compare) {
        return b;
    }
    const auto l = linearize(*b->lhs);
    const auto r = linearize(*b->rhs);
    if (!l || !r) {
        return b;
    }
    LinearExpr d; // l - r  op  0, i.e. terms op -constant
    add_scaled(d, *l, 1);
    add_scaled(d, *r, -1);
    Integer k = -d.constant;
    d.constant = 0;
    CmpOp op = b->cmp;
    if (op == CmpOp::lt) {
        op = CmpOp::le;
        k -= 1;
    } else if (op == CmpOp::gt) {
        op = CmpOp::ge;
        k += 1;
    }
    if (d.coeffs.empty()) {
        return expr::truth(compare_values(op, Integer(0), k));
    }
    if (d.coeffs.begin()->second < 0) {
        for (auto& [v, c] : d.coeffs) {
            c = -c;
        }
        k = -k;
        op = mirror(op);
    }
    Integer g = 0;
    for (const auto& [v, c] : d.coeffs) {
        g = boost::integer::gcd(g, c < 0 ? Integer(-c) : c);
    }
    if (g > 1) {
        for (auto& [v, c] : d.coeffs) {
            c /= g;
        }
        switch (op) {
        case CmpOp::le: k = floor_div(k, g); break;
        case CmpOp::ge: k = -floor_div(-k, g); break;
        case CmpOp::eq:
        case CmpOp::ne:
            if (k % g != 0) {
                return expr::truth(op == CmpOp::ne);
            }
            k /= g;
            break;
        default: break;
        }
    }
    return expr::compare(op, render(d), expr::constant(k));
}

BoolPtr normalize(const BoolPtr& b) {
    const BoolPtr n = negation_normal_form(b);
    switch (n->kind) {
    case BoolExpr::Kind::compare: return normalize_atom(n);
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction: {
        const bool is_and = n->kind == BoolExpr::Kind::conjunction;
        const BoolPtr l = normalize(n->left);
        const BoolPtr r = normalize(n->right);
        for (const auto& [x, y] : {std::pair{l, r}, std::pair{r, l}}) {
            if (x->kind == BoolExpr::Kind::constant) {
                // neutral element drops out, absorbing element wins
                return x->value == is_and ? y : x;
            }
        }
        return is_and ? expr::conj(l, r) : expr::disj(l, r);
    }
    default: return n;
    }
}

std::string predicate_key(const BoolPtr& b) {
    const std::string pos = to_string(*normalize(b));
    const std::string neg = to_string(*normalize(expr::negation(b)));
    return std::min(pos, neg);
}

} // namespace absint
