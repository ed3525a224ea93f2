// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent int64 evaluator for call-free expressions, used as a brute-force oracle.

#include <map>
#include <stdexcept>
#include <string>

#include "absint/ast.hpp"

namespace absint::testing {

using SmallEnv = std::map<std::string, long long>;

inline long long oracle_eval(const ArithExpr& e, const SmallEnv& env) {
    switch (e.kind) {
    case ArithExpr::Kind::constant: return static_cast<long long>(e.value);
    case ArithExpr::Kind::variable: return env.at(e.name);
    case ArithExpr::Kind::neg: return -oracle_eval(*e.lhs, env);
    case ArithExpr::Kind::binary: {
        const long long a = oracle_eval(*e.lhs, env);
        const long long b = oracle_eval(*e.rhs, env);
        return e.op == ArithOp::add ? a + b : e.op == ArithOp::sub ? a - b : a * b;
    }
    default: throw std::logic_error("oracle_eval: calls are not supported");
    }
}

inline bool oracle_holds(const BoolExpr& b, const SmallEnv& env) {
    switch (b.kind) {
    case BoolExpr::Kind::constant: return b.value;
    case BoolExpr::Kind::negation: return !oracle_holds(*b.left, env);
    case BoolExpr::Kind::conjunction: return oracle_holds(*b.left, env) && oracle_holds(*b.right, env);
    case BoolExpr::Kind::disjunction: return oracle_holds(*b.left, env) || oracle_holds(*b.right, env);
    case BoolExpr::Kind::compare: {
        const long long x = oracle_eval(*b.lhs, env);
        const long long y = oracle_eval(*b.rhs, env);
        switch (b.cmp) {
        case CmpOp::lt: return x < y;
        case CmpOp::le: return x <= y;
        case CmpOp::eq: return x == y;
        case CmpOp::ne: return x != y;
        case CmpOp::ge: return x >= y;
        case CmpOp::gt: return x > y;
        }
    }
    }
    return false;
}

} // namespace absint::testing
