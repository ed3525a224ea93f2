// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <functional>

#include "absint/concrete.hpp"
#include "absint/parser.hpp"
#include "absint/transfer.hpp"
#include "support/printers.hpp"
#include "support/random_values.hpp"

using namespace absint;

static Interval I(const char* text) { return parse_interval(text); }

TEST_CASE("rendering and parsing") {
    CHECK(to_string(Interval::range(0, 10)) == "[0..10]");
    CHECK(to_string(Interval::at_least(91)) == "[91..+inf]");
    CHECK(to_string(Interval::at_most(-3)) == "[-inf..-3]");
    CHECK(to_string(Interval::top()) == "[-inf..+inf]");
    CHECK(to_string(Interval::bottom()) == "[]");
    for (const char* t : {"[]", "[0..10]", "[-inf..+inf]", "[-7..-7]", "[91..+inf]"}) {
        CHECK(to_string(I(t)) == t);
    }
    CHECK_THROWS_AS(I("[3..1]"), std::invalid_argument);
    CHECK_THROWS_AS(I("[+inf..+inf]"), std::invalid_argument);
    CHECK_THROWS_AS(I("0..1"), std::invalid_argument);
}

TEST_CASE("empty interval is canonical") {
    CHECK(Interval(Bound(3), Bound(1)) == Interval::bottom());
    CHECK(Interval(Bound::plus_infinity(), Bound::plus_infinity()) == Interval::bottom());
    CHECK(Interval(Bound::minus_infinity(), Bound::minus_infinity()) == Interval::bottom());
    CHECK(I("[0..1]").meet(I("[5..6]")) == Interval::bottom());
}

TEST_CASE("order") {
    CHECK(I("[2..3]").leq(I("[0..5]")));
    CHECK_FALSE(I("[0..5]").leq(I("[2..3]")));
    CHECK(Interval::bottom().leq(I("[4..4]")));
    CHECK(Interval::bottom().leq(Interval::bottom()));
    CHECK_FALSE(I("[4..4]").leq(Interval::bottom()));
}

TEST_CASE("join") {
    CHECK(I("[1..3]").join(I("[5..9]")) == I("[1..9]"));
    CHECK(I("[1..3]").join(Interval::bottom()) == I("[1..3]"));
    CHECK(I("[-inf..0]").join(I("[0..+inf]")) == Interval::top());
}

TEST_CASE("widening") {
    CHECK(I("[0..2]").widen(I("[0..3]")) == I("[0..+inf]"));
    CHECK(I("[0..2]").widen(I("[-1..2]")) == I("[-inf..2]"));
    CHECK(Interval::bottom().widen(I("[1..1]")) == I("[1..1]"));
    CHECK(I("[1..1]").widen(Interval::bottom()) == I("[1..1]"));
    CHECK(I("[0..5]").widen(I("[1..4]")) == I("[0..5]"));
}

TEST_CASE("narrowing") {
    CHECK(I("[0..+inf]").narrow(I("[0..10]")) == I("[0..10]"));
    CHECK(I("[0..5]").narrow(I("[1..4]")) == I("[0..5]"));
    CHECK(I("[-inf..5]").narrow(I("[3..4]")) == I("[3..5]"));
    CHECK(I("[2..7]").narrow(I("[2..7]")) == I("[2..7]"));
    CHECK(I("[2..7]").narrow(Interval::bottom()) == Interval::bottom());
    CHECK_THROWS_AS(I("[0..5]").narrow(I("[3..9]")), ContractError);
}

TEST_CASE("alpha and gamma") {
    CHECK(ivl_alpha(std::vector<Integer>{1, 5, 9}) == I("[1..9]"));
    CHECK(ivl_alpha(std::vector<Integer>{}) == Interval::bottom());
    CHECK(ivl_alpha(std::vector<Integer>{4}) == I("[4..4]"));
    CHECK(ivl_gamma(I("[2..4]")).enumerate() == std::vector<Integer>{2, 3, 4});
    CHECK_FALSE(ivl_gamma(I("[0..+inf]")).contains(-1));
    CHECK(ivl_gamma(I("[0..+inf]")).contains(Integer(1) << 100));
    CHECK_THROWS_AS(ivl_gamma(I("[0..+inf]")).enumerate(), NotEnumerable);
    CHECK(ivl_gamma(Interval::bottom()).enumerate().empty());
}

TEST_CASE("arithmetic") {
    CHECK(I("[1..2]") + I("[10..20]") == I("[11..22]"));
    CHECK(I("[1..2]") - I("[10..20]") == I("[-19..-8]"));
    CHECK(I("[-2..3]") * I("[-2..3]") == I("[-6..9]"));
    CHECK(I("[0..0]") * Interval::top() == I("[0..0]"));
    CHECK(I("[0..1]") * I("[2..+inf]") == I("[0..+inf]"));
    CHECK(I("[-inf..-1]") * I("[-3..-2]") == I("[2..+inf]"));
    CHECK(I("[1..2]") * Interval::bottom() == Interval::bottom());
    CHECK(-I("[-inf..4]") == I("[-4..+inf]"));
}

namespace {

using Op = std::function<Integer(const Integer&, const Integer&)>;

Interval brute_force(const Interval& a, const Interval& b, const Op& op) {
    std::vector<Integer> image;
    for (const auto& x : ivl_gamma(a).enumerate()) {
        for (const auto& y : ivl_gamma(b).enumerate()) {
            image.push_back(op(x, y));
        }
    }
    return ivl_alpha(image);
}

} // namespace

TEST_CASE("property: arithmetic on finite intervals is the exact hull") {
    std::mt19937 rng(21);
    for (int i = 0; i < 400; ++i) {
        const Interval a = testing::random_finite_interval(rng, -6, 6);
        const Interval b = testing::random_finite_interval(rng, -6, 6);
        INFO(to_string(a), " ", to_string(b));
        CHECK(a + b == brute_force(a, b, [](const Integer& x, const Integer& y) { return x + y; }));
        CHECK(a - b == brute_force(a, b, [](const Integer& x, const Integer& y) { return x - y; }));
        CHECK(a * b == brute_force(a, b, [](const Integer& x, const Integer& y) { return x * y; }));
        std::vector<Integer> both = ivl_gamma(a).enumerate();
        const auto more = ivl_gamma(b).enumerate();
        both.insert(both.end(), more.begin(), more.end());
        CHECK(a.join(b) == ivl_alpha(both));
        std::vector<Integer> common;
        for (const auto& x : ivl_gamma(a).enumerate()) {
            if (b.contains(x)) {
                common.push_back(x);
            }
        }
        CHECK(a.meet(b) == ivl_alpha(common));
    }
}

TEST_CASE("property: Galois laws on 500 random sets in [-50,50]") {
    std::mt19937 rng(500);
    std::vector<std::vector<Integer>> samples;
    for (int i = 0; i < 500; ++i) {
        samples.push_back(testing::random_set(rng, -50, 50, 8));
    }
    std::vector<Interval> abstract;
    for (int i = 0; i < 100; ++i) {
        abstract.push_back(testing::random_interval(rng, 20));
    }
    const LawReport r = check_galois(interval_connection(), samples, abstract);
    const LawResult* f = r.first_failure();
    CHECK_MESSAGE(f == nullptr, (f ? f->law + " " + f->sample + ": " + *f->witness : std::string()));
    // every concrete sample has a finite image, so nothing was skipped there
    for (const auto& res : r.results) {
        if (res.sample[0] == 'c') {
            CHECK(res.status == LawStatus::pass);
        }
    }
}

TEST_CASE("property: widening and narrowing laws on 1000 random pairs") {
    std::mt19937 rng(1000);
    std::vector<std::pair<Interval, Interval>> pairs;
    std::vector<std::pair<Interval, Interval>> ordered;
    for (int i = 0; i < 1000; ++i) {
        const Interval x = testing::random_interval(rng);
        pairs.emplace_back(x, testing::random_interval(rng));
        ordered.emplace_back(x, x.meet(testing::random_interval(rng)));
    }
    CHECK(check_widening_laws(pairs).passed());
    const LawReport n = check_narrowing_laws(ordered);
    CHECK(n.passed());
    CHECK(n.count(LawStatus::skipped) == 0);
}

TEST_CASE("property: widening sequences stabilize within three steps") {
    std::mt19937 rng(3);
    for (int i = 0; i < 1000; ++i) {
        Interval x = testing::random_interval(rng);
        int changes = 0;
        for (int k = 0; k < 20; ++k) {
            const Interval next = x.widen(testing::random_interval(rng, 50));
            if (!(next == x)) {
                ++changes;
            }
            x = next;
        }
        CHECK(changes <= 3);
    }
}

// ---- abstract environments and transfer functions ----

static const std::vector<std::string> xyz{"x", "y", "z"};

static IntervalEnv env_of(std::initializer_list<const char*> ivs) {
    std::vector<Interval> vals;
    for (const char* t : ivs) {
        vals.push_back(I(t));
    }
    auto vars = make_var_list(std::vector<std::string>(xyz.begin(), xyz.begin() + static_cast<long>(vals.size())));
    return IntervalEnv::of(std::move(vars), std::move(vals));
}

static ArithPtr arith(const std::string& text) {
    const Program p = parse_program("var x, y, z; x := " + text + ";");
    return p.body[0].value;
}

static BoolPtr guard(const std::string& text) {
    const Program p = parse_program("var x, y, z; assert " + text + ";");
    return p.body[0].cond;
}

TEST_CASE("environment canonicalization") {
    IntervalEnv e = env_of({"[0..1]", "[2..3]"});
    CHECK_FALSE(e.is_bottom());
    e.set("y", Interval::bottom());
    CHECK(e.is_bottom());
    CHECK(e == IntervalEnv::bottom(e.vars()));
    CHECK(to_string(e) == "bot");
    CHECK(to_string(env_of({"[0..1]", "[2..+inf]"})) == "{x: [0..1], y: [2..+inf]}");
    const IntervalEnv none = IntervalEnv::bottom(make_var_list({}));
    CHECK(none.is_bottom());
    CHECK_FALSE(IntervalEnv::top(make_var_list({})).is_bottom());
}

TEST_CASE("eval_abstract examples") {
    CHECK(eval_abstract(*arith("x - 10"), env_of({"[101..+inf]"})) == I("[91..+inf]"));
    CHECK(eval_abstract(*arith("x + 11"), env_of({"[-inf..100]"})) == I("[-inf..111]"));
    CHECK(eval_abstract(*arith("x * x"), env_of({"[-2..3]"})) == I("[-6..9]"));
    CHECK(eval_abstract(*arith("x"), IntervalEnv::bottom(make_var_list({"x"}))) == Interval::bottom());
}

TEST_CASE("eval_abstract: calls go through the oracle") {
    const Program p = parse_program("var x, y; fun f91(x) = if x > 100 then x - 10 else f91(f91(x + 11));");
    const auto vars = make_var_list({"x"});
    const IntervalEnv high = IntervalEnv::of(vars, {I("[101..+inf]")});
    // no summary: top for the recursive calls, but the else-branch is unreachable here
    CHECK(eval_abstract(*p.functions[0].body, high) == I("[91..+inf]"));
    const IntervalEnv any = IntervalEnv::top(vars);
    CHECK(eval_abstract(*p.functions[0].body, any) == Interval::top());
    int calls = 0;
    const CallOracle oracle = [&](const std::string& fn, const Interval& arg) {
        ++calls;
        CHECK(fn == "f91");
        return arg.meet(I("[-inf..111]")).is_bottom() ? Interval::bottom() : I("[91..91]");
    };
    CHECK(eval_abstract(*p.functions[0].body, any, oracle) == I("[91..+inf]"));
    CHECK(calls == 2);
}

TEST_CASE("filter_abstract examples") {
    CHECK(filter_abstract(*guard("x > 100"), env_of({"[-inf..+inf]"})) == env_of({"[101..+inf]"}));
    CHECK(filter_abstract(*guard("x <= 100"), env_of({"[-inf..+inf]"})) == env_of({"[-inf..100]"}));
    CHECK(filter_abstract(*guard("x > 100"), env_of({"[0..50]"})).is_bottom());
    CHECK(filter_abstract(*guard("not (x > 3 and y < 2)"), env_of({"[0..10]", "[0..10]"})) ==
          env_of({"[0..10]", "[0..10]"}));
    CHECK(filter_abstract(*guard("x > 3 or x < -3"), env_of({"[-5..5]"})) == env_of({"[-5..5]"}));
    CHECK(filter_abstract(*guard("x > 3 or x < -30"), env_of({"[-5..5]"})) == env_of({"[4..5]"}));
    CHECK(filter_abstract(*guard("x + y <= 2"), env_of({"[0..10]", "[1..10]"})) == env_of({"[0..1]", "[1..2]"}));
    CHECK(filter_abstract(*guard("2 * x = 7"), env_of({"[0..10]"})).is_bottom());
    CHECK(filter_abstract(*guard("x != 0"), env_of({"[0..4]"})) == env_of({"[1..4]"}));
    CHECK(filter_abstract(*guard("x = y"), env_of({"[0..4]", "[3..9]"})) == env_of({"[3..4]", "[3..4]"}));
    CHECK(filter_abstract(*guard("false"), env_of({"[0..4]"})).is_bottom());
    CHECK(filter_abstract(*guard("x * x < 0"), env_of({"[1..4]"})).is_bottom());
}

namespace {

/// All concrete valuations in a finite environment (x, y, z in order).
std::vector<std::vector<Integer>> concretize(const IntervalEnv& env) {
    std::vector<std::vector<Integer>> out{{}};
    if (env.is_bottom()) {
        return {};
    }
    for (const auto& iv : env.values()) {
        std::vector<std::vector<Integer>> next;
        for (const auto& prefix : out) {
            for (const auto& v : ivl_gamma(iv).enumerate()) {
                auto row = prefix;
                row.push_back(v);
                next.push_back(std::move(row));
            }
        }
        out = std::move(next);
    }
    return out;
}

bool member(const IntervalEnv& env, const std::vector<Integer>& point) {
    if (env.is_bottom()) {
        return false;
    }
    for (size_t i = 0; i < point.size(); ++i) {
        if (!env.get(i).contains(point[i])) {
            return false;
        }
    }
    return true;
}

IntervalEnv random_env(std::mt19937& rng) {
    std::vector<Interval> vals;
    for (size_t i = 0; i < xyz.size(); ++i) {
        vals.push_back(testing::random_finite_interval(rng, -4, 4));
    }
    return IntervalEnv::of(make_var_list(xyz), std::move(vals));
}

} // namespace

TEST_CASE("property: eval_abstract is sound") {
    std::mt19937 rng(77);
    const Evaluator ev({});
    for (int i = 0; i < 500; ++i) {
        const IntervalEnv env = random_env(rng);
        const ArithPtr e = testing::random_arith(rng, xyz, 3);
        const Interval abs = eval_abstract(*e, env);
        const auto points = concretize(env);
        for (int k = 0; k < 10; ++k) {
            const auto& pt = points[static_cast<size_t>(testing::uniform(rng, 0, static_cast<int>(points.size()) - 1))];
            const Integer v = ev.eval(*e, Valuation{xyz, pt});
            INFO(to_string(*e), " in ", to_string(env));
            CHECK(abs.contains(v));
        }
    }
}

TEST_CASE("property: filter_abstract is sound") {
    std::mt19937 rng(78);
    const Evaluator ev({});
    for (int i = 0; i < 500; ++i) {
        const IntervalEnv env = random_env(rng);
        const BoolPtr g = testing::random_bool(rng, xyz, 2);
        const IntervalEnv out = filter_abstract(*g, env);
        CHECK(out.leq(env));
        for (const auto& pt : concretize(env)) {
            if (ev.holds(*g, Valuation{xyz, pt})) {
                INFO(to_string(*g), " on ", to_string(env), " gave ", to_string(out));
                REQUIRE(member(out, pt));
            }
        }
    }
}

TEST_CASE("sign transfer functions") {
    const auto vars = make_var_list({"x", "y"});
    const SignEnv env = SignEnv::of(vars, {Sign::pos(), Sign::neg()});
    CHECK(eval_sign(*arith("x * y"), env) == Sign::neg());
    CHECK(eval_sign(*arith("x - y"), env) == Sign::pos());
    CHECK(eval_sign(*arith("x + y"), env) == Sign::top());
    CHECK(eval_sign(*arith("0 * (x + y)"), env) == Sign::zero());
    const SignEnv any = SignEnv::top(vars);
    CHECK(filter_sign(*guard("x > 0"), any) == SignEnv::of(vars, {Sign::pos(), Sign::top()}));
    CHECK(filter_sign(*guard("x >= 1 and y = 0"), any) == SignEnv::of(vars, {Sign::pos(), Sign::zero()}));
    CHECK(filter_sign(*guard("x < 0"), env).is_bottom());
    CHECK(sign_of(I("[0..0]")) == Sign::zero());
    CHECK(sign_of(I("[0..3]")) == Sign::top());
    CHECK(sign_hull(Sign::neg()) == I("[-inf..-1]"));
}

TEST_CASE("property: sign evaluation is sound") {
    std::mt19937 rng(79);
    const Evaluator ev({});
    const auto vars = make_var_list(xyz);
    for (int i = 0; i < 500; ++i) {
        std::vector<Integer> pt;
        std::vector<Sign> signs;
        for (int k = 0; k < 3; ++k) {
            pt.push_back(testing::uniform(rng, -5, 5));
            signs.push_back(Sign::of(pt.back()).join(testing::uniform(rng, 0, 1) == 1 ? Sign::top() : Sign::bottom()));
        }
        const SignEnv env = SignEnv::of(vars, signs);
        const ArithPtr e = testing::random_arith(rng, xyz, 3);
        CHECK(sign_gamma(eval_sign(*e, env)).contains(ev.eval(*e, Valuation{xyz, pt})));
        const BoolPtr g = testing::random_bool(rng, xyz, 2);
        if (ev.holds(*g, Valuation{xyz, pt})) {
            const SignEnv f = filter_sign(*g, env);
            REQUIRE_FALSE(f.is_bottom());
            for (size_t k = 0; k < 3; ++k) {
                CHECK(sign_gamma(f.get(k)).contains(pt[k]));
            }
        }
    }
}
