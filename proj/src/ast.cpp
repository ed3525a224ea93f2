// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/ast.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace absint {

Integer parse_integer(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty integer literal");
    }
    bool negative = false;
    size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) {
        throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
    }
    Integer v = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
        }
        v = v * 10 + (c - '0');
    }
    return negative ? Integer(-v) : v;
}

Integer wrap_to_int64(const Integer& v) {
    static const Integer modulus = Integer(1) << 64;
    static const Integer half = Integer(1) << 63;
    Integer r = v % modulus;
    if (r < 0) {
        r += modulus;
    }
    if (r >= half) {
        r -= modulus;
    }
    return r;
}

namespace expr {

ArithPtr constant(Integer v) {
    auto e = std::make_shared<ArithExpr>();
    e->kind = ArithExpr::Kind::constant;
    e->value = std::move(v);
    return e;
}

ArithPtr variable(std::string name) {
    auto e = std::make_shared<ArithExpr>();
    e->kind = ArithExpr::Kind::variable;
    e->name = std::move(name);
    return e;
}

ArithPtr call(std::string fn, ArithPtr arg) {
    auto e = std::make_shared<ArithExpr>();
    e->kind = ArithExpr::Kind::call;
    e->name = std::move(fn);
    e->lhs = std::move(arg);
    return e;
}

ArithPtr neg(ArithPtr operand) {
    auto e = std::make_shared<ArithExpr>();
    e->kind = ArithExpr::Kind::neg;
    e->lhs = std::move(operand);
    return e;
}

ArithPtr binary(ArithOp op, ArithPtr a, ArithPtr b) {
    auto e = std::make_shared<ArithExpr>();
    e->kind = ArithExpr::Kind::binary;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ArithPtr add(ArithPtr a, ArithPtr b) { return binary(ArithOp::add, std::move(a), std::move(b)); }
ArithPtr sub(ArithPtr a, ArithPtr b) { return binary(ArithOp::sub, std::move(a), std::move(b)); }
ArithPtr mul(ArithPtr a, ArithPtr b) { return binary(ArithOp::mul, std::move(a), std::move(b)); }

ArithPtr conditional(BoolPtr c, ArithPtr then_e, ArithPtr else_e) {
    auto e = std::make_shared<ArithExpr>();
    e->kind = ArithExpr::Kind::conditional;
    e->cond = std::move(c);
    e->lhs = std::move(then_e);
    e->rhs = std::move(else_e);
    return e;
}

BoolPtr truth(bool v) {
    auto b = std::make_shared<BoolExpr>();
    b->kind = BoolExpr::Kind::constant;
    b->value = v;
    return b;
}

BoolPtr compare(CmpOp op, ArithPtr a, ArithPtr c) {
    auto b = std::make_shared<BoolExpr>();
    b->kind = BoolExpr::Kind::compare;
    b->cmp = op;
    b->lhs = std::move(a);
    b->rhs = std::move(c);
    return b;
}

BoolPtr negation(BoolPtr operand) {
    auto b = std::make_shared<BoolExpr>();
    b->kind = BoolExpr::Kind::negation;
    b->left = std::move(operand);
    return b;
}

BoolPtr conj(BoolPtr l, BoolPtr r) {
    auto b = std::make_shared<BoolExpr>();
    b->kind = BoolExpr::Kind::conjunction;
    b->left = std::move(l);
    b->right = std::move(r);
    return b;
}

BoolPtr disj(BoolPtr l, BoolPtr r) {
    auto b = std::make_shared<BoolExpr>();
    b->kind = BoolExpr::Kind::disjunction;
    b->left = std::move(l);
    b->right = std::move(r);
    return b;
}

BoolPtr conj_all(const std::vector<BoolPtr>& parts) {
    if (parts.empty()) {
        return truth(true);
    }
    BoolPtr acc = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) {
        acc = conj(acc, parts[i]);
    }
    return acc;
}

} // namespace expr

CmpOp negate(CmpOp op) {
    switch (op) {
    case CmpOp::lt: return CmpOp::ge;
    case CmpOp::le: return CmpOp::gt;
    case CmpOp::eq: return CmpOp::ne;
    case CmpOp::ne: return CmpOp::eq;
    case CmpOp::ge: return CmpOp::lt;
    case CmpOp::gt: return CmpOp::le;
    }
    return op;
}

CmpOp mirror(CmpOp op) {
    switch (op) {
    case CmpOp::lt: return CmpOp::gt;
    case CmpOp::le: return CmpOp::ge;
    case CmpOp::ge: return CmpOp::le;
    case CmpOp::gt: return CmpOp::lt;
    default: return op;
    }
}

bool compare_values(CmpOp op, const Integer& a, const Integer& b) {
    switch (op) {
    case CmpOp::lt: return a < b;
    case CmpOp::le: return a <= b;
    case CmpOp::eq: return a == b;
    case CmpOp::ne: return a != b;
    case CmpOp::ge: return a >= b;
    case CmpOp::gt: return a > b;
    }
    return false;
}

std::string_view to_string(CmpOp op) {
    switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::ge: return ">=";
    case CmpOp::gt: return ">";
    }
    return "?";
}

static bool same(const ArithPtr& a, const ArithPtr& b) {
    if (!a || !b) {
        return !a && !b;
    }
    return a == b || equal(*a, *b);
}

static bool same(const BoolPtr& a, const BoolPtr& b) {
    if (!a || !b) {
        return !a && !b;
    }
    return a == b || equal(*a, *b);
}

bool equal(const ArithExpr& a, const ArithExpr& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case ArithExpr::Kind::constant: return a.value == b.value;
    case ArithExpr::Kind::variable: return a.name == b.name;
    case ArithExpr::Kind::call: return a.name == b.name && same(a.lhs, b.lhs);
    case ArithExpr::Kind::neg: return same(a.lhs, b.lhs);
    case ArithExpr::Kind::binary: return a.op == b.op && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
    case ArithExpr::Kind::conditional: return same(a.cond, b.cond) && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
    }
    return false;
}

bool equal(const BoolExpr& a, const BoolExpr& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case BoolExpr::Kind::constant: return a.value == b.value;
    case BoolExpr::Kind::compare: return a.cmp == b.cmp && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
    case BoolExpr::Kind::negation: return same(a.left, b.left);
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction: return same(a.left, b.left) && same(a.right, b.right);
    }
    return false;
}

// Printing. Precedence levels for arithmetic: 0 conditional, 1 additive, 2 multiplicative, 3 unary, 4 atom.
// For booleans: 0 or, 1 and, 2 not, 3 atom.

static void print(std::ostream& os, const ArithExpr& e, int ctx);
static void print(std::ostream& os, const BoolExpr& b, int ctx);

static void print(std::ostream& os, const ArithExpr& e, int ctx) {
    switch (e.kind) {
    case ArithExpr::Kind::constant: os << e.value; return;
    case ArithExpr::Kind::variable: os << e.name; return;
    case ArithExpr::Kind::call:
        os << e.name << '(';
        print(os, *e.lhs, 0);
        os << ')';
        return;
    case ArithExpr::Kind::neg:
        os << '-';
        if (e.lhs->kind == ArithExpr::Kind::constant) {
            // "-5" would read back as a literal
            os << '(' << e.lhs->value << ')';
        } else {
            print(os, *e.lhs, 3);
        }
        return;
    case ArithExpr::Kind::binary: {
        const int prec = e.op == ArithOp::mul ? 2 : 1;
        if (ctx > prec) {
            os << '(';
        }
        print(os, *e.lhs, prec);
        os << (e.op == ArithOp::add ? " + " : e.op == ArithOp::sub ? " - " : " * ");
        print(os, *e.rhs, prec + 1);
        if (ctx > prec) {
            os << ')';
        }
        return;
    }
    case ArithExpr::Kind::conditional:
        if (ctx > 0) {
            os << '(';
        }
        os << "if ";
        print(os, *e.cond, 0);
        os << " then ";
        print(os, *e.lhs, 0);
        os << " else ";
        print(os, *e.rhs, 0);
        if (ctx > 0) {
            os << ')';
        }
        return;
    }
}

static void print(std::ostream& os, const BoolExpr& b, int ctx) {
    switch (b.kind) {
    case BoolExpr::Kind::constant: os << (b.value ? "true" : "false"); return;
    case BoolExpr::Kind::compare:
        print(os, *b.lhs, 1);
        os << ' ' << to_string(b.cmp) << ' ';
        print(os, *b.rhs, 1);
        return;
    case BoolExpr::Kind::negation:
        os << "not ";
        print(os, *b.left, 2);
        return;
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction: {
        const int prec = b.kind == BoolExpr::Kind::disjunction ? 0 : 1;
        if (ctx > prec) {
            os << '(';
        }
        print(os, *b.left, prec);
        os << (prec == 0 ? " or " : " and ");
        print(os, *b.right, prec + 1);
        if (ctx > prec) {
            os << ')';
        }
        return;
    }
    }
}

std::string to_string(const ArithExpr& e) {
    std::ostringstream os;
    print(os, e, 0);
    return os.str();
}

std::string to_string(const BoolExpr& b) {
    std::ostringstream os;
    print(os, b, 0);
    return os.str();
}

void collect_vars(const ArithExpr& e, std::set<std::string>& out) {
    switch (e.kind) {
    case ArithExpr::Kind::constant: return;
    case ArithExpr::Kind::variable: out.insert(e.name); return;
    case ArithExpr::Kind::call:
    case ArithExpr::Kind::neg: collect_vars(*e.lhs, out); return;
    case ArithExpr::Kind::binary:
        collect_vars(*e.lhs, out);
        collect_vars(*e.rhs, out);
        return;
    case ArithExpr::Kind::conditional:
        collect_vars(*e.cond, out);
        collect_vars(*e.lhs, out);
        collect_vars(*e.rhs, out);
        return;
    }
}

void collect_vars(const BoolExpr& b, std::set<std::string>& out) {
    switch (b.kind) {
    case BoolExpr::Kind::constant: return;
    case BoolExpr::Kind::compare:
        collect_vars(*b.lhs, out);
        collect_vars(*b.rhs, out);
        return;
    case BoolExpr::Kind::negation: collect_vars(*b.left, out); return;
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction:
        collect_vars(*b.left, out);
        collect_vars(*b.right, out);
        return;
    }
}

void collect_calls(const ArithExpr& e, std::set<std::string>& out) {
    switch (e.kind) {
    case ArithExpr::Kind::constant:
    case ArithExpr::Kind::variable: return;
    case ArithExpr::Kind::call:
        out.insert(e.name);
        collect_calls(*e.lhs, out);
        return;
    case ArithExpr::Kind::neg: collect_calls(*e.lhs, out); return;
    case ArithExpr::Kind::binary:
        collect_calls(*e.lhs, out);
        collect_calls(*e.rhs, out);
        return;
    case ArithExpr::Kind::conditional:
        collect_calls(*e.cond, out);
        collect_calls(*e.lhs, out);
        collect_calls(*e.rhs, out);
        return;
    }
}

void collect_calls(const BoolExpr& b, std::set<std::string>& out) {
    switch (b.kind) {
    case BoolExpr::Kind::constant: return;
    case BoolExpr::Kind::compare:
        collect_calls(*b.lhs, out);
        collect_calls(*b.rhs, out);
        return;
    case BoolExpr::Kind::negation: collect_calls(*b.left, out); return;
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction:
        collect_calls(*b.left, out);
        collect_calls(*b.right, out);
        return;
    }
}

bool has_call(const ArithExpr& e) {
    std::set<std::string> calls;
    collect_calls(e, calls);
    return !calls.empty();
}

bool has_call(const BoolExpr& b) {
    std::set<std::string> calls;
    collect_calls(b, calls);
    return !calls.empty();
}

ArithPtr substitute(const ArithPtr& e, const std::string& var, const ArithPtr& replacement) {
    switch (e->kind) {
    case ArithExpr::Kind::constant: return e;
    case ArithExpr::Kind::variable: return e->name == var ? replacement : e;
    case ArithExpr::Kind::call: return expr::call(e->name, substitute(e->lhs, var, replacement));
    case ArithExpr::Kind::neg: return expr::neg(substitute(e->lhs, var, replacement));
    case ArithExpr::Kind::binary:
        return expr::binary(e->op, substitute(e->lhs, var, replacement), substitute(e->rhs, var, replacement));
    case ArithExpr::Kind::conditional:
        return expr::conditional(substitute(e->cond, var, replacement), substitute(e->lhs, var, replacement),
                                 substitute(e->rhs, var, replacement));
    }
    return e;
}

BoolPtr substitute(const BoolPtr& b, const std::string& var, const ArithPtr& replacement) {
    switch (b->kind) {
    case BoolExpr::Kind::constant: return b;
    case BoolExpr::Kind::compare:
        return expr::compare(b->cmp, substitute(b->lhs, var, replacement), substitute(b->rhs, var, replacement));
    case BoolExpr::Kind::negation: return expr::negation(substitute(b->left, var, replacement));
    case BoolExpr::Kind::conjunction:
        return expr::conj(substitute(b->left, var, replacement), substitute(b->right, var, replacement));
    case BoolExpr::Kind::disjunction:
        return expr::disj(substitute(b->left, var, replacement), substitute(b->right, var, replacement));
    }
    return b;
}

BoolPtr negation_normal_form(const BoolPtr& b, bool negated) {
    switch (b->kind) {
    case BoolExpr::Kind::constant: return negated ? expr::truth(!b->value) : b;
    case BoolExpr::Kind::compare: return negated ? expr::compare(negate(b->cmp), b->lhs, b->rhs) : b;
    case BoolExpr::Kind::negation: return negation_normal_form(b->left, !negated);
    case BoolExpr::Kind::conjunction:
    case BoolExpr::Kind::disjunction: {
        auto l = negation_normal_form(b->left, negated);
        auto r = negation_normal_form(b->right, negated);
        const bool is_and = (b->kind == BoolExpr::Kind::conjunction) != negated;
        return is_and ? expr::conj(l, r) : expr::disj(l, r);
    }
    }
    return b;
}

void conjuncts(const BoolPtr& b, std::vector<BoolPtr>& out) {
    if (b->kind == BoolExpr::Kind::conjunction) {
        conjuncts(b->left, out);
        conjuncts(b->right, out);
    } else {
        out.push_back(b);
    }
}

const FunDef* Program::find_function(const std::string& fn) const {
    for (const auto& f : functions) {
        if (f.name == fn) {
            return &f;
        }
    }
    return nullptr;
}

bool Program::has_var(const std::string& v) const { return std::find(vars.begin(), vars.end(), v) != vars.end(); }

static bool equal_body(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](const Stmt& x, const Stmt& y) {
               return equal(x, y);
           });
}

bool equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case Stmt::Kind::assign: return a.target == b.target && same(a.value, b.value);
    case Stmt::Kind::branch:
        return same(a.cond, b.cond) && equal_body(a.then_body, b.then_body) && equal_body(a.else_body, b.else_body);
    case Stmt::Kind::loop: return same(a.cond, b.cond) && equal_body(a.then_body, b.then_body);
    case Stmt::Kind::assertion: return same(a.cond, b.cond);
    case Stmt::Kind::skip: return true;
    }
    return false;
}

bool equal(const Program& a, const Program& b) {
    if (a.name != b.name || a.vars != b.vars || a.init != b.init || a.functions.size() != b.functions.size()) {
        return false;
    }
    for (size_t i = 0; i < a.functions.size(); ++i) {
        const auto& f = a.functions[i];
        const auto& g = b.functions[i];
        if (f.name != g.name || f.param != g.param || !same(f.body, g.body)) {
            return false;
        }
    }
    return equal_body(a.body, b.body);
}

static void print_body(std::ostream& os, const std::vector<Stmt>& body, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    for (const auto& s : body) {
        switch (s.kind) {
        case Stmt::Kind::assign: os << pad << s.target << " := " << to_string(*s.value) << ";\n"; break;
        case Stmt::Kind::branch:
            os << pad << "if " << to_string(*s.cond) << " then\n";
            print_body(os, s.then_body, indent + 1);
            if (!s.else_body.empty()) {
                os << pad << "else\n";
                print_body(os, s.else_body, indent + 1);
            }
            os << pad << "end\n";
            break;
        case Stmt::Kind::loop:
            os << pad << "while " << to_string(*s.cond) << " do\n";
            print_body(os, s.then_body, indent + 1);
            os << pad << "end\n";
            break;
        case Stmt::Kind::assertion: os << pad << "assert " << to_string(*s.cond) << ";\n"; break;
        case Stmt::Kind::skip: os << pad << "skip;\n"; break;
        }
    }
}

std::string pretty_print(const Program& p) {
    std::ostringstream os;
    os << "var ";
    for (size_t i = 0; i < p.vars.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        os << p.vars[i];
        for (const auto& [v, value] : p.init) {
            if (v == p.vars[i]) {
                os << " = " << value;
            }
        }
    }
    os << ";\n";
    for (const auto& f : p.functions) {
        os << "fun " << f.name << '(' << f.param << ") = " << to_string(*f.body) << ";\n";
    }
    print_body(os, p.body, 0);
    return os.str();
}

} // namespace absint
