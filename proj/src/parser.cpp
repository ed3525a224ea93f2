// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace absint {

static std::string format_error(SourceLoc loc, const std::string& message) {
    std::ostringstream os;
    os << loc.line << ':' << loc.column << ": " << message;
    return os.str();
}

MilError::MilError(Kind kind, SourceLoc loc, const std::string& message)
    : std::runtime_error(format_error(loc, message)), kind_(kind), loc_(loc) {}

namespace {

enum class Tok { ident, integer, keyword, symbol, eof };

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    SourceLoc loc;
};

const std::set<std::string, std::less<>> keywords = {"var",  "fun",    "if",   "then", "else", "end",  "while",
                                                     "do",   "assert", "skip", "not",  "and",  "or",   "true",
                                                     "false"};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        i += n;
        col += static_cast<int>(n);
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                ++i;
            }
            continue;
        }
        const SourceLoc loc{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            std::string word(src.substr(i, j - i));
            const Tok kind = keywords.contains(word) ? Tok::keyword : Tok::ident;
            out.push_back({kind, std::move(word), loc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
            out.push_back({Tok::integer, std::string(src.substr(i, j - i)), loc});
            advance(j - i);
            continue;
        }
        static const char* two_char[] = {":=", "<=", ">=", "!="};
        bool matched = false;
        for (const char* sym : two_char) {
            if (src.substr(i, 2) == sym) {
                out.push_back({Tok::symbol, sym, loc});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        if (std::string_view("()+-*<>=,;").find(c) != std::string_view::npos) {
            out.push_back({Tok::symbol, std::string(1, c), loc});
            advance(1);
            continue;
        }
        throw MilError(MilError::Kind::syntax, loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::eof, "", {line, col}});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program program(std::string name) {
        Program p;
        p.name = std::move(name);
        expect_keyword("var");
        do {
            const Token& id = expect_ident("variable name");
            declare(id);
            p.vars.push_back(id.text);
            if (accept_symbol("=")) {
                p.init.emplace_back(id.text, signed_literal());
            }
        } while (accept_symbol(","));
        expect_symbol(";");
        vars_ = std::set<std::string>(p.vars.begin(), p.vars.end());

        while (peek_keyword("fun")) {
            next();
            FunDef f;
            const Token& fname = expect_ident("function name");
            declare(fname);
            f.name = fname.text;
            expect_symbol("(");
            f.param = expect_ident("parameter name").text;
            expect_symbol(")");
            expect_symbol("=");
            function_scope_ = f.param;
            f.body = arith();
            function_scope_.reset();
            expect_symbol(";");
            functions_.insert(f.name);
            p.functions.push_back(std::move(f));
        }
        p.body = statements();
        if (peek().kind != Tok::eof) {
            throw syntax_error(peek(), "statement");
        }
        resolve_calls();
        return p;
    }

    BoolPtr standalone_predicate(const Program& p) {
        vars_ = std::set<std::string>(p.vars.begin(), p.vars.end());
        for (const auto& f : p.functions) {
            functions_.insert(f.name);
        }
        BoolPtr b = boolean();
        if (peek().kind != Tok::eof) {
            throw syntax_error(peek(), "end of predicate");
        }
        resolve_calls();
        return b;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::set<std::string> names_;
    std::set<std::string> vars_;
    std::set<std::string> functions_;
    std::optional<std::string> function_scope_;
    std::vector<Token> pending_calls_;

    const Token& peek(size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) {
            ++pos_;
        }
        return t;
    }

    static MilError syntax_error(const Token& t, const std::string& expected) {
        const std::string found = t.kind == Tok::eof ? "end of input" : "'" + t.text + "'";
        return MilError(MilError::Kind::syntax, t.loc, "expected " + expected + ", found " + found);
    }

    bool peek_keyword(std::string_view kw) const { return peek().kind == Tok::keyword && peek().text == kw; }
    bool peek_symbol(std::string_view s) const { return peek().kind == Tok::symbol && peek().text == s; }

    bool accept_symbol(std::string_view s) {
        if (peek_symbol(s)) {
            next();
            return true;
        }
        return false;
    }

    bool accept_keyword(std::string_view kw) {
        if (peek_keyword(kw)) {
            next();
            return true;
        }
        return false;
    }

    void expect_symbol(std::string_view s) {
        if (!accept_symbol(s)) {
            throw syntax_error(peek(), "'" + std::string(s) + "'");
        }
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) {
            throw syntax_error(peek(), "'" + std::string(kw) + "'");
        }
    }

    const Token& expect_ident(const std::string& what) {
        if (peek().kind != Tok::ident) {
            throw syntax_error(peek(), what);
        }
        return next();
    }

    void declare(const Token& id) {
        if (!names_.insert(id.text).second) {
            throw MilError(MilError::Kind::duplicate_name, id.loc, "duplicate name '" + id.text + "'");
        }
    }

    Integer signed_literal() {
        const bool negative = accept_symbol("-");
        if (peek().kind != Tok::integer) {
            throw syntax_error(peek(), "integer literal");
        }
        Integer v = parse_integer(next().text);
        return negative ? Integer(-v) : v;
    }

    void resolve_calls() {
        for (const auto& t : pending_calls_) {
            if (!functions_.contains(t.text)) {
                throw MilError(MilError::Kind::undeclared, t.loc, "undeclared function '" + t.text + "'");
            }
        }
    }

    void check_variable(const Token& id) const {
        if (function_scope_) {
            if (id.text != *function_scope_) {
                throw MilError(MilError::Kind::undeclared, id.loc,
                               "undeclared variable '" + id.text + "' (function bodies may only use their parameter)");
            }
            return;
        }
        if (!vars_.contains(id.text)) {
            throw MilError(MilError::Kind::undeclared, id.loc, "undeclared variable '" + id.text + "'");
        }
    }

    std::vector<Stmt> statements() {
        std::vector<Stmt> out;
        while (true) {
            const Token& t = peek();
            if (t.kind == Tok::eof || (t.kind == Tok::keyword && (t.text == "end" || t.text == "else"))) {
                return out;
            }
            out.push_back(statement());
        }
    }

    Stmt statement() {
        const Token& t = peek();
        Stmt s;
        s.loc = t.loc;
        if (t.kind == Tok::ident) {
            next();
            if (!vars_.contains(t.text)) {
                throw MilError(MilError::Kind::undeclared, t.loc, "undeclared variable '" + t.text + "'");
            }
            expect_symbol(":=");
            s.kind = Stmt::Kind::assign;
            s.target = t.text;
            s.value = arith();
            expect_symbol(";");
            return s;
        }
        if (accept_keyword("if")) {
            s.kind = Stmt::Kind::branch;
            s.cond = boolean();
            expect_keyword("then");
            s.then_body = statements();
            if (accept_keyword("else")) {
                s.else_body = statements();
            }
            expect_keyword("end");
            return s;
        }
        if (accept_keyword("while")) {
            s.kind = Stmt::Kind::loop;
            s.cond = boolean();
            expect_keyword("do");
            s.then_body = statements();
            expect_keyword("end");
            return s;
        }
        if (accept_keyword("assert")) {
            s.kind = Stmt::Kind::assertion;
            s.cond = boolean();
            expect_symbol(";");
            return s;
        }
        if (accept_keyword("skip")) {
            s.kind = Stmt::Kind::skip;
            expect_symbol(";");
            return s;
        }
        throw syntax_error(t, "statement");
    }

    ArithPtr arith() {
        if (peek_keyword("if")) {
            const Token& t = next();
            if (!function_scope_) {
                throw MilError(MilError::Kind::invalid, t.loc, "conditional expressions are only allowed in function bodies");
            }
            BoolPtr c = boolean();
            expect_keyword("then");
            ArithPtr a = arith();
            expect_keyword("else");
            ArithPtr b = arith();
            return expr::conditional(std::move(c), std::move(a), std::move(b));
        }
        ArithPtr acc = product();
        while (peek_symbol("+") || peek_symbol("-")) {
            const bool plus = next().text == "+";
            ArithPtr rhs = product();
            acc = plus ? expr::add(std::move(acc), std::move(rhs)) : expr::sub(std::move(acc), std::move(rhs));
        }
        return acc;
    }

    ArithPtr product() {
        ArithPtr acc = unary();
        while (accept_symbol("*")) {
            acc = expr::mul(std::move(acc), unary());
        }
        return acc;
    }

    ArithPtr unary() {
        if (accept_symbol("-")) {
            if (peek().kind == Tok::integer) {
                return expr::constant(-parse_integer(next().text));
            }
            return expr::neg(unary());
        }
        return primary();
    }

    ArithPtr primary() {
        const Token& t = peek();
        if (t.kind == Tok::integer) {
            next();
            return expr::constant(parse_integer(t.text));
        }
        if (t.kind == Tok::ident) {
            next();
            if (accept_symbol("(")) {
                if (vars_.contains(t.text) && !functions_.contains(t.text)) {
                    throw MilError(MilError::Kind::invalid, t.loc, "'" + t.text + "' is a variable, not a function");
                }
                pending_calls_.push_back(t);
                ArithPtr arg = arith();
                expect_symbol(")");
                return expr::call(t.text, std::move(arg));
            }
            check_variable(t);
            return expr::variable(t.text);
        }
        if (accept_symbol("(")) {
            ArithPtr e = arith();
            expect_symbol(")");
            return e;
        }
        throw syntax_error(t, "expression");
    }

    BoolPtr boolean() {
        BoolPtr acc = conjunction();
        while (accept_keyword("or")) {
            acc = expr::disj(std::move(acc), conjunction());
        }
        return acc;
    }

    BoolPtr conjunction() {
        BoolPtr acc = negation();
        while (accept_keyword("and")) {
            acc = expr::conj(std::move(acc), negation());
        }
        return acc;
    }

    BoolPtr negation() {
        if (accept_keyword("not")) {
            return expr::negation(negation());
        }
        return bool_atom();
    }

    static std::optional<CmpOp> comparison_op(const Token& t) {
        if (t.kind != Tok::symbol) {
            return std::nullopt;
        }
        if (t.text == "<") return CmpOp::lt;
        if (t.text == "<=") return CmpOp::le;
        if (t.text == "=") return CmpOp::eq;
        if (t.text == "!=") return CmpOp::ne;
        if (t.text == ">=") return CmpOp::ge;
        if (t.text == ">") return CmpOp::gt;
        return std::nullopt;
    }

    BoolPtr bool_atom() {
        if (accept_keyword("true")) {
            return expr::truth(true);
        }
        if (accept_keyword("false")) {
            return expr::truth(false);
        }
        if (peek_symbol("(")) {
            // Either a parenthesized boolean or a comparison whose left operand is parenthesized.
            const size_t saved = pos_;
            const size_t saved_calls = pending_calls_.size();
            try {
                next();
                BoolPtr b = boolean();
                expect_symbol(")");
                const Token& after = peek();
                const bool arithmetic_continues = comparison_op(after).has_value() || after.text == "+" ||
                                                  after.text == "-" || after.text == "*";
                if (!(after.kind == Tok::symbol && arithmetic_continues)) {
                    return b;
                }
            } catch (const MilError& e) {
                if (e.kind() != MilError::Kind::syntax) {
                    throw;
                }
            }
            pos_ = saved;
            pending_calls_.resize(saved_calls);
        }
        ArithPtr lhs = arith();
        const auto op = comparison_op(peek());
        if (!op) {
            throw syntax_error(peek(), "comparison operator");
        }
        next();
        ArithPtr rhs = arith();
        return expr::compare(*op, std::move(lhs), std::move(rhs));
    }
};

} // namespace

Program parse_program(std::string_view source, std::string name) {
    Parser parser(tokenize(source));
    return parser.program(std::move(name));
}

Predicate parse_predicate(std::string_view source, const Program& p) {
    Parser parser(tokenize(source));
    Predicate pred;
    pred.expr = parser.standalone_predicate(p);
    pred.text = to_string(*pred.expr);
    return pred;
}

std::vector<Predicate> parse_predicate_file(std::string_view source, const Program& p) {
    std::vector<Predicate> out;
    size_t start = 0;
    int line_no = 0;
    while (start <= source.size()) {
        size_t end = source.find('\n', start);
        if (end == std::string_view::npos) {
            end = source.size();
        }
        ++line_no;
        std::string_view line = source.substr(start, end - start);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                out.push_back(parse_predicate(line, p));
            } catch (const MilError& e) {
                throw MilError(e.kind(), {line_no, e.loc().column}, "predicate file: " + std::string(e.what()));
            }
        }
        start = end + 1;
    }
    for (size_t i = 0; i < out.size(); ++i) {
        out[i].id = static_cast<int>(i) + 1;
    }
    return out;
}

} // namespace absint
