// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hand-rolled generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "absint/ast.hpp"

namespace absint::testing {

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline ArithPtr random_arith(std::mt19937& rng, const std::vector<std::string>& vars, int depth,
                             bool allow_mul = true) {
    const int pick = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, allow_mul ? 5 : 4);
    switch (pick) {
    case 0: return expr::constant(uniform(rng, -5, 5));
    case 1: return expr::variable(vars[static_cast<size_t>(uniform(rng, 0, static_cast<int>(vars.size()) - 1))]);
    case 2: return expr::add(random_arith(rng, vars, depth - 1, allow_mul), random_arith(rng, vars, depth - 1, allow_mul));
    case 3: return expr::sub(random_arith(rng, vars, depth - 1, allow_mul), random_arith(rng, vars, depth - 1, allow_mul));
    case 4: return expr::neg(random_arith(rng, vars, depth - 1, allow_mul));
    default: return expr::mul(random_arith(rng, vars, depth - 1, allow_mul), random_arith(rng, vars, depth - 1, allow_mul));
    }
}

inline CmpOp random_cmp(std::mt19937& rng) { return static_cast<CmpOp>(uniform(rng, 0, 5)); }

inline BoolPtr random_bool(std::mt19937& rng, const std::vector<std::string>& vars, int depth,
                           bool allow_mul = true) {
    const int pick = depth <= 0 ? 0 : uniform(rng, 0, 4);
    switch (pick) {
    case 1: return expr::negation(random_bool(rng, vars, depth - 1, allow_mul));
    case 2: return expr::conj(random_bool(rng, vars, depth - 1, allow_mul), random_bool(rng, vars, depth - 1, allow_mul));
    case 3: return expr::disj(random_bool(rng, vars, depth - 1, allow_mul), random_bool(rng, vars, depth - 1, allow_mul));
    default:
        return expr::compare(random_cmp(rng), random_arith(rng, vars, 1, allow_mul), random_arith(rng, vars, 1, allow_mul));
    }
}

inline std::vector<Stmt> random_stmts(std::mt19937& rng, const std::vector<std::string>& vars, int depth, int count,
                                      bool allow_mul = true) {
    std::vector<Stmt> out;
    for (int i = 0; i < count; ++i) {
        Stmt s;
        const int pick = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 4);
        switch (pick) {
        case 0:
            s.kind = Stmt::Kind::assign;
            s.target = vars[static_cast<size_t>(uniform(rng, 0, static_cast<int>(vars.size()) - 1))];
            s.value = random_arith(rng, vars, 2, allow_mul);
            break;
        case 1:
            s.kind = uniform(rng, 0, 1) == 0 ? Stmt::Kind::skip : Stmt::Kind::assertion;
            if (s.kind == Stmt::Kind::assertion) {
                s.cond = random_bool(rng, vars, 1, allow_mul);
            }
            break;
        case 2:
        case 3:
            s.kind = Stmt::Kind::branch;
            s.cond = random_bool(rng, vars, 1, allow_mul);
            s.then_body = random_stmts(rng, vars, depth - 1, uniform(rng, 0, 2), allow_mul);
            s.else_body = random_stmts(rng, vars, depth - 1, uniform(rng, 0, 2), allow_mul);
            break;
        default:
            s.kind = Stmt::Kind::loop;
            s.cond = random_bool(rng, vars, 1, allow_mul);
            s.then_body = random_stmts(rng, vars, depth - 1, uniform(rng, 0, 2), allow_mul);
            break;
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Without multiplication, loops grow values at most linearly, which keeps enumeration cheap.
inline Program random_program(std::mt19937& rng, bool allow_mul = true) {
    Program p;
    p.vars = {"x", "y", "z"};
    p.body = random_stmts(rng, p.vars, 3, uniform(rng, 0, 4), allow_mul);
    return p;
}

} // namespace absint::testing
