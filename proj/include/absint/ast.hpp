// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absint/integer.hpp"

namespace absint {

// Expression trees are immutable and shared; rewriting builds new nodes.

struct ArithExpr;
struct BoolExpr;
using ArithPtr = std::shared_ptr<const ArithExpr>;
using BoolPtr = std::shared_ptr<const BoolExpr>;

enum class ArithOp { add, sub, mul };
enum class CmpOp { lt, le, eq, ne, ge, gt };

struct ArithExpr {
    enum class Kind { constant, variable, call, neg, binary, conditional };

    Kind kind = Kind::constant;
    Integer value;    // constant
    std::string name; // variable or callee
    ArithOp op = ArithOp::add;
    ArithPtr lhs; // binary lhs; operand of neg and call; then-branch of conditional
    ArithPtr rhs; // binary rhs; else-branch of conditional
    BoolPtr cond; // conditional guard
};

struct BoolExpr {
    enum class Kind { constant, compare, negation, conjunction, disjunction };

    Kind kind = Kind::constant;
    bool value = true;
    CmpOp cmp = CmpOp::eq;
    ArithPtr lhs, rhs; // compare operands
    BoolPtr left;      // negation operand, or first operand of and/or
    BoolPtr right;
};

namespace expr {
ArithPtr constant(Integer v);
ArithPtr variable(std::string name);
ArithPtr call(std::string fn, ArithPtr arg);
ArithPtr neg(ArithPtr e);
ArithPtr binary(ArithOp op, ArithPtr a, ArithPtr b);
ArithPtr add(ArithPtr a, ArithPtr b);
ArithPtr sub(ArithPtr a, ArithPtr b);
ArithPtr mul(ArithPtr a, ArithPtr b);
ArithPtr conditional(BoolPtr c, ArithPtr then_e, ArithPtr else_e);

BoolPtr truth(bool v);
BoolPtr compare(CmpOp op, ArithPtr a, ArithPtr b);
BoolPtr negation(BoolPtr b);
BoolPtr conj(BoolPtr a, BoolPtr b);
BoolPtr disj(BoolPtr a, BoolPtr b);
/// Conjunction of all parts; `true` when empty.
BoolPtr conj_all(const std::vector<BoolPtr>& parts);
} // namespace expr

CmpOp negate(CmpOp op);
/// The operator obtained by swapping operands: a < b iff b > a.
CmpOp mirror(CmpOp op);
bool compare_values(CmpOp op, const Integer& a, const Integer& b);
std::string_view to_string(CmpOp op);

bool equal(const ArithExpr& a, const ArithExpr& b);
bool equal(const BoolExpr& a, const BoolExpr& b);

std::string to_string(const ArithExpr& e);
std::string to_string(const BoolExpr& b);

void collect_vars(const ArithExpr& e, std::set<std::string>& out);
void collect_vars(const BoolExpr& b, std::set<std::string>& out);
void collect_calls(const ArithExpr& e, std::set<std::string>& out);
void collect_calls(const BoolExpr& b, std::set<std::string>& out);
bool has_call(const ArithExpr& e);
bool has_call(const BoolExpr& b);

/// Capture-free substitution of `var` by `replacement`.
ArithPtr substitute(const ArithPtr& e, const std::string& var, const ArithPtr& replacement);
BoolPtr substitute(const BoolPtr& b, const std::string& var, const ArithPtr& replacement);

/// Pushes negations down to comparisons (De Morgan, operator flipping).
BoolPtr negation_normal_form(const BoolPtr& b, bool negated = false);

/// Flattens nested conjunctions into a list of conjuncts.
void conjuncts(const BoolPtr& b, std::vector<BoolPtr>& out);

struct SourceLoc {
    int line = 0;
    int column = 0;
};

struct Stmt {
    enum class Kind { assign, branch, loop, assertion, skip };

    Kind kind = Kind::skip;
    std::string target; // assign
    ArithPtr value;     // assign
    BoolPtr cond;       // branch, loop, assertion
    std::vector<Stmt> then_body; // branch then-part; loop body
    std::vector<Stmt> else_body;
    SourceLoc loc;
};

struct FunDef {
    std::string name;
    std::string param;
    ArithPtr body;
};

struct Program {
    std::string name = "main";
    std::vector<std::string> vars;
    std::vector<std::pair<std::string, Integer>> init;
    std::vector<FunDef> functions;
    std::vector<Stmt> body;

    const FunDef* find_function(const std::string& fn) const;
    bool has_var(const std::string& v) const;
};

bool equal(const Stmt& a, const Stmt& b);
bool equal(const Program& a, const Program& b);

/// Renders a program in concrete MIL syntax; the output re-parses to an equal Program.
std::string pretty_print(const Program& p);

} // namespace absint
