// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <random>

#include "absint/cfg.hpp"
#include "absint/parser.hpp"
#include "support/random_programs.hpp"

using namespace absint;

static const char* f91_source = R"(# McCarthy's 91 function
var x, y;
fun f91(x) = if x > 100 then x - 10 else f91(f91(x + 11));
y := f91(x);
)";

TEST_CASE("parse minimal program") {
    const Program p = parse_program("var x; x := 1;");
    REQUIRE(p.vars == std::vector<std::string>{"x"});
    REQUIRE(p.body.size() == 1);
    CHECK(p.body[0].kind == Stmt::Kind::assign);
    CHECK(p.body[0].target == "x");
    CHECK(to_string(*p.body[0].value) == "1");
}

TEST_CASE("parse F91 function definition") {
    const Program p = parse_program(f91_source);
    REQUIRE(p.functions.size() == 1);
    const FunDef& f = p.functions[0];
    CHECK(f.name == "f91");
    CHECK(f.param == "x");
    CHECK(to_string(*f.body) == "if x > 100 then x - 10 else f91(f91(x + 11))");
}

TEST_CASE("undeclared variable is rejected") {
    try {
        parse_program("var x; y := 1;");
        FAIL("expected an error");
    } catch (const MilError& e) {
        CHECK(e.kind() == MilError::Kind::undeclared);
        CHECK(e.loc().line == 1);
        CHECK(e.loc().column == 8);
    }
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_program("var x;\nx := (1 + ;\n");
        FAIL("expected an error");
    } catch (const MilError& e) {
        CHECK(e.kind() == MilError::Kind::syntax);
        CHECK(e.loc().line == 2);
        CHECK(e.loc().column == 11);
    }
}

TEST_CASE("duplicate names are rejected") {
    CHECK_THROWS_AS(parse_program("var x, x;"), MilError);
    CHECK_THROWS_AS(parse_program("var f; fun f(a) = a;"), MilError);
    CHECK_THROWS_AS(parse_program("var x; fun g(a) = a; fun g(b) = b;"), MilError);
}

TEST_CASE("function bodies only see their parameter") {
    CHECK_THROWS_AS(parse_program("var x; fun g(a) = a + x;"), MilError);
    CHECK_THROWS_AS(parse_program("var x; x := h(1);"), MilError);
    CHECK_THROWS_AS(parse_program("var x; x := if x > 0 then 1 else 2;"), MilError);
}

TEST_CASE("CRLF line endings and comments") {
    const Program p = parse_program("var x; # decl\r\nwhile x < 3 do\r\n  x := x + 1;\r\nend\r\n");
    REQUIRE(p.body.size() == 1);
    CHECK(p.body[0].kind == Stmt::Kind::loop);
}

TEST_CASE("parenthesized booleans and arithmetic") {
    const Program p = parse_program("var x, y; assert not (x > 1 and (y + 1) * 2 <= 3) or (x = y);");
    CHECK(to_string(*p.body[0].cond) == "not (x > 1 and (y + 1) * 2 <= 3) or x = y");
}

TEST_CASE("declared initial values") {
    const Program p = parse_program("var x = -3, y;");
    REQUIRE(p.init.size() == 1);
    CHECK(p.init[0].first == "x");
    CHECK(p.init[0].second == -3);
}

TEST_CASE("parse_predicate") {
    const Program p = parse_program(f91_source);
    const Predicate gt = parse_predicate("x > 100", p);
    CHECK(gt.text == "x > 100");
    std::set<std::string> vars;
    collect_vars(*gt.expr, vars);
    CHECK(vars == std::set<std::string>{"x"});

    const Predicate t = parse_predicate("true", p);
    CHECK(t.expr->kind == BoolExpr::Kind::constant);
    CHECK(t.expr->value);

    CHECK_THROWS_AS(parse_predicate("z = 0", p), MilError);
    CHECK_THROWS_AS(parse_predicate("x >", p), MilError);
}

TEST_CASE("predicate files") {
    const Program p = parse_program("var x, y;");
    const auto preds = parse_predicate_file("# header\nx > 0\n\ny <= x # trailing\n", p);
    REQUIRE(preds.size() == 2);
    CHECK(preds[0].id == 1);
    CHECK(preds[1].text == "y <= x");
    CHECK(preds[1].id == 2);
}

TEST_CASE("while loop lowering") {
    const Cfg cfg = lower_to_cfg(parse_program("var x; while x < 3 do x := x + 1; end"));
    // entry -skip-> head; head -assume(x<3)-> body; body -assign-> head; head -assume(not x<3)-> exit
    REQUIRE(cfg.edges.size() == 4);
    const NodeId head = cfg.edges[0].dst;
    CHECK(cfg.edges[0].src == Cfg::entry);
    CHECK(cfg.edges[0].cmd.kind == Command::Kind::skip);
    CHECK(to_string(cfg.edges[1].cmd) == "assume(x < 3)");
    CHECK(cfg.edges[1].src == head);
    CHECK(cfg.edges[2].dst == head);
    CHECK(to_string(cfg.edges[3].cmd) == "assume(not x < 3)");
    CHECK(cfg.edges[3].src == head);
    CHECK(cfg.edges[3].dst == Cfg::exit);
}

TEST_CASE("empty body connects entry to exit") {
    const Cfg cfg = lower_to_cfg(parse_program("var x;"));
    REQUIRE(cfg.edges.size() == 1);
    CHECK(cfg.edges[0].src == Cfg::entry);
    CHECK(cfg.edges[0].dst == Cfg::exit);
    CHECK(cfg.edges[0].cmd.kind == Command::Kind::skip);
}

TEST_CASE("assert lowers to an error edge and a continuation") {
    const Cfg cfg = lower_to_cfg(parse_program("var x; x := 1; assert x >= 0;"));
    int to_error = 0;
    for (const auto& e : cfg.edges) {
        if (e.dst == Cfg::error) {
            ++to_error;
            CHECK(to_string(e.cmd) == "assume(not x >= 0)");
        }
    }
    CHECK(to_error == 1);
}

TEST_CASE("property: pretty-print round-trips") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 300; ++i) {
        const Program p = testing::random_program(rng);
        const std::string text = pretty_print(p);
        const Program q = parse_program(text);
        INFO(text);
        CHECK(equal(p, q));
    }
    const Program f91 = parse_program(f91_source);
    CHECK(equal(f91, parse_program(pretty_print(f91))));
}

TEST_CASE("property: lowered CFGs satisfy the structural invariants") {
    std::mt19937 rng(99);
    for (int i = 0; i < 300; ++i) {
        const Program p = testing::random_program(rng);
        const Cfg cfg = lower_to_cfg(p);
        INFO(pretty_print(p));
        CHECK(cfg_invariant_violations(cfg).empty());
    }
}
