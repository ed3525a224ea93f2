// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <random>

#include "absint/fixpoint.hpp"
#include "absint/parser.hpp"
#include "support/printers.hpp"
#include "support/corpus.hpp"
#include "support/random_programs.hpp"
#include "support/random_values.hpp"

using namespace absint;

static Cfg cfg_of(const std::string& src) { return lower_to_cfg(parse_program(src)); }

static Interval I(const char* text) { return parse_interval(text); }

/// Node whose in-edges include a back edge: the loop head of a single loop program.
static NodeId only_head(const Cfg& cfg) {
    const auto heads = widening_points(cfg);
    REQUIRE(heads.size() == 1);
    return heads[0];
}

TEST_CASE("counting loop: widening then narrowing") {
    const Cfg cfg = cfg_of("var x; x := 0; while x < 10 do x := x + 1; end");
    const IntervalEnv entry = initial_interval_env(cfg);
    const NodeId head = only_head(cfg);

    FixpointOptions no_narrowing;
    no_narrowing.narrowing_budget = 0;
    const auto up = analyze_cfg(cfg, entry, no_narrowing);
    CHECK(up.envs[static_cast<size_t>(head)].get("x") == I("[0..+inf]"));

    const auto r = analyze_cfg(cfg, entry);
    CHECK(r.envs[static_cast<size_t>(head)].get("x") == I("[0..10]"));
    CHECK(r.envs[Cfg::exit].get("x") == I("[10..10]"));
    CHECK(r.envs[Cfg::error].is_bottom());
    CHECK(r.stats.widenings >= 1);
    CHECK(r.stats.narrowing_steps >= 1);
    CHECK(check_post_fixpoint(cfg, r));
}

TEST_CASE("straight-line constant propagation") {
    const Cfg cfg = cfg_of("var x, y; x := 1; y := x + 2;");
    const auto r = analyze_cfg(cfg, initial_interval_env(cfg));
    CHECK(r.envs[Cfg::exit].get("y") == I("[3..3]"));
    CHECK(r.widening_points.empty());
}

TEST_CASE("loop without exit") {
    const Cfg cfg = cfg_of("var x; x := 0; while true do x := x + 1; end");
    const auto r = analyze_cfg(cfg, initial_interval_env(cfg));
    CHECK(r.envs[static_cast<size_t>(only_head(cfg))].get("x") == I("[0..+inf]"));
    CHECK(r.envs[Cfg::exit].is_bottom());
    CHECK(to_string(r.envs[Cfg::exit]) == "bot");
}

TEST_CASE("initial ranges and declared initializers") {
    const Cfg cfg = cfg_of("var x = 4, y, z; skip;");
    const IntervalEnv e = initial_interval_env(cfg, {{"y", {-1, 2}}});
    CHECK(to_string(e) == "{x: [4..4], y: [-1..2], z: [-inf..+inf]}");
    CHECK(to_string(initial_sign_env(cfg, {{"y", {-1, 2}}})) == "{x: +, y: top, z: top}");
}

static const char* f91_src = "var x, y;\nfun f91(x) = if x > 100 then x - 10 else f91(f91(x + 11));\ny := f91(x);\n";

TEST_CASE("F91 summaries") {
    const Program p = parse_program(f91_src);
    CHECK(analyze_function("f91", p.functions, Interval::top()) == I("[91..+inf]"));
    CHECK(analyze_function("f91", p.functions, I("[-inf..111]")) == I("[91..101]"));
    CHECK(analyze_function("f91", p.functions, I("[150..150]")) == I("[140..140]"));
}

TEST_CASE("F91 through the CFG") {
    const Cfg cfg = cfg_of(f91_src);
    const auto r = analyze_cfg(cfg, initial_interval_env(cfg));
    CHECK(r.envs[Cfg::exit].get("y") == I("[91..+inf]"));
    CHECK(check_post_fixpoint(cfg, r));
    const auto entries = r.summaries->entries();
    REQUIRE_FALSE(entries.empty());
    CHECK(entries[0].function == "f91");
    CHECK(entries[0].input == Interval::top());
    CHECK(entries[0].output == I("[91..+inf]"));
}

TEST_CASE("property: F91 summaries contain the concrete results") {
    const Program p = parse_program(f91_src);
    const Evaluator ev(p.functions);
    std::mt19937 rng(91);
    for (int i = 0; i < 200; ++i) {
        const Interval in = testing::random_finite_interval(rng, -30, 130);
        const Interval out = analyze_function("f91", p.functions, in);
        for (const auto& v : ivl_gamma(in).enumerate()) {
            INFO(to_string(in), " -> ", to_string(out));
            CHECK(out.contains(ev.call("f91", v)));
        }
    }
}

TEST_CASE("check_post_fixpoint rejects a shrunk loop head and accepts top") {
    const Cfg cfg = cfg_of("var x; x := 0; while x < 10 do x := x + 1; end");
    auto r = analyze_cfg(cfg, initial_interval_env(cfg));
    REQUIRE(check_post_fixpoint(cfg, r));

    auto shrunk = r;
    shrunk.envs[static_cast<size_t>(only_head(cfg))].set("x", I("[0..5]"));
    CHECK_FALSE(check_post_fixpoint(cfg, shrunk));

    auto top = r;
    for (auto& e : top.envs) {
        e = IntervalEnv::top(e.vars());
    }
    CHECK(check_post_fixpoint(cfg, top));
}

TEST_CASE("trace lines") {
    const Cfg cfg = cfg_of("var x; x := 0; while x < 10 do x := x + 1; end");
    std::vector<std::string> lines;
    FixpointOptions opts;
    opts.trace = [&](const std::string& l) { lines.push_back(l); };
    const auto r = analyze_cfg(cfg, initial_interval_env(cfg), opts);
    const std::string head = std::to_string(only_head(cfg));
    CHECK(std::find(lines.begin(), lines.end(),
                    "fixpoint: phase=ascend node=" + head + " old={x: [0..0]} new={x: [0..+inf]} widened=1") !=
          lines.end());
    CHECK(std::find(lines.begin(), lines.end(),
                    "fixpoint: phase=descend node=" + head + " old={x: [0..+inf]} new={x: [0..10]} widened=0") !=
          lines.end());
    CHECK(lines.size() == r.stats.ascending_steps + r.stats.narrowing_steps);
}

TEST_CASE("sign analysis") {
    const Cfg cfg = cfg_of("var x, y; x := 1; y := 0; while y < 10 do y := y + x; end x := x * y;");
    const auto r = analyze_cfg(cfg, initial_sign_env(cfg));
    CHECK(to_string(r.envs[Cfg::exit]) == "{x: +, y: +}");
    CHECK(check_post_fixpoint(cfg, r));

    FixpointOptions join_only;
    join_only.widening = false;
    const auto j = analyze_cfg(cfg, initial_sign_env(cfg), join_only);
    CHECK(j.envs == r.envs);
}

// ---- properties ----

namespace {

/// Input ranges used for the corpus: every variable starts in [-3, 3].
InitRanges corpus_ranges(const Cfg& cfg) {
    InitRanges ranges;
    for (const auto& v : cfg.var_order) {
        ranges[v] = {-3, 3};
    }
    return ranges;
}

template <typename V>
void check_sound(const Cfg& cfg, const AnalysisResult<V>& r, const ConcreteSystem& sys, const std::string& name) {
    for (const auto& s : sys.states) {
        const auto& env = r.envs[static_cast<size_t>(s.node)];
        INFO(name, " node ", s.node, ": ", to_string(s, cfg), " not in ", to_string(env));
        REQUIRE_FALSE(env.is_bottom());
        for (size_t i = 0; i < s.env.size(); ++i) {
            if constexpr (std::is_same_v<V, Interval>) {
                REQUIRE(env.get(i).contains(s.env[i]));
            } else {
                REQUIRE(sign_gamma(env.get(i)).contains(s.env[i]));
            }
        }
    }
}

} // namespace

TEST_CASE("property: analysis results contain every reachable concrete state") {
    auto files = testing::data_files("corpus/loops", ".mil");
    files.push_back(testing::data_path("corpus/f91.mil"));
    REQUIRE(files.size() >= 11);
    for (const auto& f : files) {
        const Cfg cfg = lower_to_cfg(parse_program(testing::read_file(f)));
        const InitRanges ranges = corpus_ranges(cfg);
        const auto sys = enumerate_reachable(cfg, ranges, 200000);
        REQUIRE_FALSE(sys.truncated);
        REQUIRE(sys.divergent.empty());

        FixpointOptions ascend_only;
        ascend_only.narrowing_budget = 0;
        const auto up = analyze_cfg(cfg, initial_interval_env(cfg, ranges), ascend_only);
        const auto r = analyze_cfg(cfg, initial_interval_env(cfg, ranges));
        check_sound(cfg, r, sys, f.filename().string());
        check_sound(cfg, up, sys, f.filename().string());
        CHECK(check_post_fixpoint(cfg, r));
        for (size_t n = 0; n < r.envs.size(); ++n) {
            CHECK(r.envs[n].leq(up.envs[n]));
        }
        const auto s = analyze_cfg(cfg, initial_sign_env(cfg, ranges));
        check_sound(cfg, s, sys, f.filename().string());
        CHECK(check_post_fixpoint(cfg, s));
    }
}

TEST_CASE("property: analysis terminates on random programs and yields post-fixpoints") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const Program p = testing::random_program(rng);
        const Cfg cfg = lower_to_cfg(p);
        INFO(pretty_print(p));
        const auto r = analyze_cfg(cfg, initial_interval_env(cfg));
        CHECK(check_post_fixpoint(cfg, r));
        const auto s = analyze_cfg(cfg, initial_sign_env(cfg));
        CHECK(check_post_fixpoint(cfg, s));
    }
}

TEST_CASE("property: random programs are analyzed soundly") {
    std::mt19937 rng(31337);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Program p = testing::random_program(rng, i % 2 == 0);
        const Cfg cfg = lower_to_cfg(p);
        if (i % 2 == 0 && !widening_points(cfg).empty()) {
            continue; // multiplication in a loop: values explode
        }
        InitRanges ranges;
        for (const auto& v : cfg.var_order) {
            ranges[v] = {-2, 2};
        }
        const auto sys = enumerate_reachable(cfg, ranges, 3000);
        if (sys.truncated) {
            continue;
        }
        ++checked;
        check_sound(cfg, analyze_cfg(cfg, initial_interval_env(cfg, ranges)), sys, pretty_print(p));
    }
    CHECK(checked > 100);
}

TEST_CASE("property: enlarging the entry environment never shrinks a sign result") {
    std::mt19937 rng(8);
    const auto files = testing::data_files("corpus/loops", ".mil");
    for (int i = 0; i < 300; ++i) {
        const auto& f = files[static_cast<size_t>(testing::uniform(rng, 0, static_cast<int>(files.size()) - 1))];
        const Cfg cfg = lower_to_cfg(parse_program(testing::read_file(f)));
        std::vector<Sign> small;
        std::vector<Sign> big;
        for (size_t k = 0; k < cfg.var_order.size(); ++k) {
            small.push_back(testing::random_sign(rng));
            big.push_back(small.back().join(testing::random_sign(rng)));
        }
        const auto vars = make_var_list(cfg.var_order);
        const auto rs = analyze_cfg(cfg, SignEnv::of(vars, small));
        const auto rb = analyze_cfg(cfg, SignEnv::of(vars, big));
        for (size_t n = 0; n < rs.envs.size(); ++n) {
            INFO(f.filename().string(), " node ", n);
            CHECK(rs.envs[n].leq(rb.envs[n]));
        }
    }
}

TEST_CASE("property: enlarging the entry environment never shrinks an interval result without loops") {
    std::mt19937 rng(9);
    int checked = 0;
    while (checked < 200) {
        const Program p = testing::random_program(rng);
        const Cfg cfg = lower_to_cfg(p);
        if (!widening_points(cfg).empty()) {
            continue;
        }
        ++checked;
        std::vector<Interval> small;
        std::vector<Interval> big;
        for (size_t k = 0; k < cfg.var_order.size(); ++k) {
            small.push_back(testing::random_interval(rng, 5));
            big.push_back(small.back().join(testing::random_interval(rng, 8)));
        }
        const auto vars = make_var_list(cfg.var_order);
        const auto rs = analyze_cfg(cfg, IntervalEnv::of(vars, small));
        const auto rb = analyze_cfg(cfg, IntervalEnv::of(vars, big));
        for (size_t n = 0; n < rs.envs.size(); ++n) {
            INFO(pretty_print(p), " node ", n);
            CHECK(rs.envs[n].leq(rb.envs[n]));
        }
    }
}

TEST_CASE("interval widening is not monotone in the entry environment") {
    // A narrow start makes x grow and get widened; a wide start covers the loop's range at once.
    const Cfg cfg = lower_to_cfg(parse_program(testing::read_file(testing::data_path("corpus/loops/clamp.mil"))));
    const auto vars = make_var_list(cfg.var_order);
    const auto narrow = analyze_cfg(cfg, IntervalEnv::of(vars, {I("[-2..-2]"), Interval::top()}));
    const auto wide = analyze_cfg(cfg, IntervalEnv::of(vars, {I("[-2..4]"), Interval::top()}));
    CHECK(narrow.envs[Cfg::exit].get("x") == I("[-2..+inf]"));
    CHECK(wide.envs[Cfg::exit].get("x") == I("[-2..4]"));
}

TEST_CASE("property: transfer functions are monotone") {
    std::mt19937 rng(12);
    const std::vector<std::string> xyz{"x", "y", "z"};
    const auto vars = make_var_list(xyz);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Interval> a;
        std::vector<Interval> b;
        for (int k = 0; k < 3; ++k) {
            a.push_back(testing::random_interval(rng, 6));
            b.push_back(a.back().join(testing::random_interval(rng, 6)));
        }
        const IntervalEnv ea = IntervalEnv::of(vars, a);
        const IntervalEnv eb = IntervalEnv::of(vars, b);
        const ArithPtr e = testing::random_arith(rng, xyz, 2);
        CHECK(eval_abstract(*e, ea).leq(eval_abstract(*e, eb)));
        const BoolPtr g = testing::random_bool(rng, xyz, 2);
        INFO(to_string(*g), " on ", to_string(ea), " / ", to_string(eb));
        CHECK(filter_abstract(*g, ea).leq(filter_abstract(*g, eb)));
    }
}
