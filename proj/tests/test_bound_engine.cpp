// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "catch_amalgamated.hpp"
#include "dcbound/bound_engine.hpp"
#include "dcbound/report.hpp"
#include "test_data.hpp"

using namespace dcbound;
using dcbound::testing::load_dcp;

namespace {

AnalysisResult run(const std::string& file, AnalysisMode mode, bool memoize = true) {
    AnalysisOptions opts;
    opts.mode = mode;
    opts.memoize = memoize;
    return analyze(load_dcp(file), opts);
}

std::string tb(const AnalysisResult& r, const std::string& id) { return r.transition_bounds.at(id).str(); }

struct Engine {
    PrunedResetGraph pruned;
    BoundEngine engine;

    Engine(const Dcp& dcp, AnalysisMode mode)
        : pruned(build_reset_graph(dcp)), engine(pruned, local_bound_map(pruned.dcp), {mode, 4096, true}) {}
};

} // namespace

TEST_CASE("example A agrees in every mode", "[engine]") {
    for (auto mode : {AnalysisMode::Free, AnalysisMode::Ctx, AnalysisMode::Opt}) {
        INFO(to_string(mode));
        const auto r = run("example_a.dcp", mode);
        CHECK(tb(r, "t1") == "n");
        CHECK(tb(r, "t2") == "n");
        CHECK(r.complexity.str() == "2*n");
    }
}

TEST_CASE("example B", "[engine]") {
    const auto free = run("example_b.dcp", AnalysisMode::Free);
    CHECK(tb(free, "t1") == "n");
    CHECK(tb(free, "t2") == "n");
    CHECK(tb(free, "t3") == "n*n");
    CHECK(free.complexity.str() == "2*n + n*n");
    CHECK(free.variable_bounds.at("k").str() == "n");
    const auto ctx = run("example_b.dcp", AnalysisMode::Ctx);
    CHECK(tb(ctx, "t3") == "n + n*n");
}

TEST_CASE("example C", "[engine]") {
    const auto free = run("example_c.dcp", AnalysisMode::Free);
    CHECK(tb(free, "t2") == "n*n");
    CHECK(free.complexity.str() == "n + n*n");
    const auto ctx = run("example_c.dcp", AnalysisMode::Ctx);
    CHECK(tb(ctx, "t2") == "n");
    CHECK(ctx.complexity.str() == "2*n");
}

TEST_CASE("example 1", "[engine]") {
    CHECK(tb(run("example_1.dcp", AnalysisMode::Free), "t3") == "n*n");
    const auto ctx = run("example_1.dcp", AnalysisMode::Ctx);
    CHECK(tb(ctx, "t3") == "2*n");
    CHECK(ctx.complexity.str() == "3*n");
    const auto opt = run("example_1.dcp", AnalysisMode::Opt);
    CHECK(tb(opt, "t3") == "n");
    CHECK(opt.complexity.str() == "2*n");
}

TEST_CASE("example 2", "[engine]") {
    const auto free = run("example_2.dcp", AnalysisMode::Free);
    CHECK(tb(free, "t3") == "2*n + max(m1,m2)");
    CHECK(free.variable_bounds.at("x").str() == "2*n + max(m1,m2)");
    CHECK(free.complexity.str() == "3*n + max(m1,m2)");
    CHECK(tb(run("example_2.dcp", AnalysisMode::Ctx), "t3") == "4*n + m1 + m2");
    CHECK(tb(run("example_2.dcp", AnalysisMode::Opt), "t3") == "2*n + m1 + m2");
}

TEST_CASE("incr and vb", "[engine]") {
    Engine e1(load_dcp("example_1.dcp"), AnalysisMode::Ctx);
    CHECK(e1.engine.incr("r").str() == "n");
    CHECK(e1.engine.incr("x").str() == "0");
    CHECK(e1.engine.vb(Atom::symbolic("n")).str() == "n");
    CHECK(e1.engine.vb(Atom::integer(3)).str() == "3");

    Engine e2(load_dcp("example_2.dcp"), AnalysisMode::Free);
    CHECK(e2.engine.incr("x").str() == "2*n");

    Engine c(load_dcp("example_c.dcp"), AnalysisMode::Free);
    CHECK(c.engine.vb(Atom::variable("r")).str() == "n");
}

TEST_CASE("bounds of transition sets", "[engine]") {
    const auto a = load_dcp("example_a.dcp");
    Engine e(a, AnalysisMode::Ctx);
    const std::vector<TransitionIndex> both{a.transition_index("t0"), a.transition_index("t1")};
    CHECK(e.engine.tb(both).str() == "1");
    const std::vector<TransitionIndex> loops{a.transition_index("t1"), a.transition_index("t2")};
    CHECK(e.engine.tb(loops).str() == "n");
}

TEST_CASE("loop-free programs have constant complexity", "[engine]") {
    const auto dcp = parse_dcp_or_throw("dcp\nconsts: n\nvars: x\nentry: a\nexit: z\n"
                                        "trans t0: a -> b { x' <= n; }\ntrans t1: b -> z { }\n");
    const auto r = analyze(dcp);
    CHECK(r.complexity.str() == "0");
    CHECK(tb(r, "t0") == "1");
}

TEST_CASE("missing local bounds and reset cycles yield undef", "[engine]") {
    const auto unb = run("unbounded.dcp", AnalysisMode::Ctx);
    CHECK(tb(unb, "t1") == "undef");
    CHECK(unb.complexity.is_undefined());

    const auto pp = run("ping_pong.dcp", AnalysisMode::Ctx);
    CHECK(pp.removed_variables == std::set<std::string>{"x", "y"});
    CHECK(pp.variable_bounds.at("x").is_undefined());
    CHECK(pp.variable_bounds.at("y").is_undefined());
    CHECK(tb(pp, "t2") == "undef");
    CHECK(pp.complexity.is_undefined());
}

TEST_CASE("mutually feeding counters recurse to undef", "[engine]") {
    const auto dcp = parse_dcp_or_throw("dcp\nconsts: n\nvars: x, y\nentry: a\nexit: z\n"
                                        "trans t0: a -> b { x' <= n; y' <= n; }\n"
                                        "trans t1: b -> b guard(x) { x' <= x - 1; y' <= y + 1; }\n"
                                        "trans t2: b -> b guard(y) { x' <= x + 1; y' <= y - 1; }\n"
                                        "trans t3: b -> z { }\n");
    for (auto mode : {AnalysisMode::Free, AnalysisMode::Ctx, AnalysisMode::Opt}) {
        const auto r = analyze(dcp, {mode});
        CHECK(tb(r, "t1") == "undef");
        CHECK(tb(r, "t2") == "undef");
        CHECK(r.complexity.is_undefined());
    }
}

TEST_CASE("memoization does not change results", "[engine]") {
    for (const auto& ex : dcbound::testing::worked_examples()) {
        for (auto mode : {AnalysisMode::Free, AnalysisMode::Ctx, AnalysisMode::Opt}) {
            INFO(ex.name << " " << to_string(mode));
            AnalysisOptions with{mode};
            AnalysisOptions without{mode};
            without.memoize = false;
            const auto a = analyze(ex.dcp, with);
            const auto b = analyze(ex.dcp, without);
            CHECK(format_report(report_of(a), true) == format_report(report_of(b), true));
        }
    }
}

TEST_CASE("modes parse and print", "[engine]") {
    CHECK(parse_mode("free") == AnalysisMode::Free);
    CHECK(parse_mode("ctx") == AnalysisMode::Ctx);
    CHECK(parse_mode("opt") == AnalysisMode::Opt);
    CHECK_FALSE(parse_mode("fast"));
    CHECK(to_string(AnalysisMode::Opt) == "opt");
}

TEST_CASE("reports round-trip", "[engine]") {
    const auto r = report_of(run("example_2.dcp", AnalysisMode::Free));
    const auto text = format_report(r, true);
    CHECK(text.find("TB(t3) = 2*n + max(m1,m2)\n") != std::string::npos);
    CHECK(text.find("complexity = 3*n + max(m1,m2)") != std::string::npos);
    const auto back = parse_report(text);
    CHECK(format_report(back, true) == text);
    CHECK_THROWS_AS(parse_report("TB(t1) n"), InputError);
}

TEST_CASE("cycle cap surfaces from analysis", "[engine]") {
    AnalysisOptions opts;
    opts.max_cycles = 100;
    CHECK_THROWS_AS(analyze(load_dcp("many_cycles.dcp"), opts), CycleCapExceeded);
}
