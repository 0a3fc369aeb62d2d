// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "catch_amalgamated.hpp"
#include "dcbound/oracle.hpp"
#include "test_data.hpp"

using namespace dcbound;
using dcbound::testing::load_dcp;

namespace {

std::int64_t count_of(const Dcp& dcp, const Exploration& ex, const char* id) {
    return ex.max_count[dcp.transition_index(id)];
}

} // namespace

TEST_CASE("oracle counts on example A", "[oracle]") {
    const auto a = load_dcp("example_a.dcp");
    const auto ex = explore(a, {{"n", 3}});
    CHECK(ex.exhausted);
    CHECK(count_of(a, ex, "t0") == 1);
    CHECK(count_of(a, ex, "t1") == 3);
    CHECK(count_of(a, ex, "t2") == 3);
    CHECK(ex.max_value.at("i") == 3);
    CHECK(ex.max_value.at("j") == 3);
}

TEST_CASE("oracle counts on the other examples", "[oracle]") {
    const auto c = load_dcp("example_c.dcp");
    CHECK(count_of(c, explore(c, {{"n", 2}}), "t2") == 2);
    const auto b = load_dcp("example_b.dcp");
    CHECK(count_of(b, explore(b, {{"n", 2}}), "t3") == 4);
    const auto e1 = load_dcp("example_1.dcp");
    CHECK(count_of(e1, explore(e1, {{"n", 3}}), "t3") == 3);
    const auto e2 = load_dcp("example_2.dcp");
    const auto ex2 = explore(e2, {{"n", 2}, {"m1", 1}, {"m2", 3}});
    CHECK(count_of(e2, ex2, "t3") == 7);
    CHECK(ex2.max_value.at("x") == 7);
}

TEST_CASE("state loops count as unbounded", "[oracle]") {
    const auto u = load_dcp("unbounded.dcp");
    const auto ex = explore(u, {{"n", 1}});
    CHECK(ex.exhausted);
    CHECK(count_of(u, ex, "t1") == unbounded_count);
    CHECK(count_of(u, ex, "te") == 1);
}

TEST_CASE("state cap marks the search as partial", "[oracle]") {
    const auto a = load_dcp("example_a.dcp");
    const auto ex = explore(a, {{"n", 50}}, 5);
    CHECK_FALSE(ex.exhausted);
    CHECK(ex.states == 5);
}

TEST_CASE("oracle input errors", "[oracle]") {
    const auto a = load_dcp("example_a.dcp");
    CHECK_THROWS_AS(explore(a, {}), InputError);
}

TEST_CASE("valuation grids", "[oracle]") {
    const std::vector<std::string> consts{"m", "n"};
    const auto grid = valuation_grid(consts, 0, 2);
    REQUIRE(grid.size() == 9);
    CHECK(grid.front() == Valuation{{"m", 0}, {"n", 0}});
    CHECK(grid.back() == Valuation{{"m", 2}, {"n", 2}});
    CHECK(valuation_grid({}, 0, 4).size() == 1);
    CHECK_THROWS_AS(valuation_grid(consts, 3, 1), InputError);
    CHECK(format_valuation({{"n", 3}, {"m1", 2}}) == "m1=2,n=3");
}

TEST_CASE("parallel sweep matches the serial reference", "[oracle]") {
    for (const auto& ex : dcbound::testing::worked_examples()) {
        INFO(ex.name);
        const auto grid = valuation_grid(ex.dcp.sym_consts(), 0, 3);
        CHECK(explore_all_parallel(ex.dcp, grid) == explore_all_serial(ex.dcp, grid));
    }
}

TEST_CASE("soundness check flags a corrupted bound", "[oracle]") {
    const auto a = load_dcp("example_a.dcp");
    BoundReport report;
    report.transition_bounds["t2"] = BoundExpr::constant(0);
    const auto grid = valuation_grid(a.sym_consts(), 1, 1);
    const auto res = check_soundness(a, report, grid);
    CHECK(res.verdict == Verdict::Fail);
    CHECK(res.violations() == 1);
    REQUIRE(res.checks.size() == 1);
    CHECK(res.checks[0].rows[0].str() == "t2  1  0  VIOLATION");

    report.transition_bounds["t2"] = BoundExpr::symbol("n");
    report.variable_bounds["i"] = BoundExpr::undefined();
    const auto ok = check_soundness(a, report, valuation_grid(a.sym_consts(), 0, 3), default_step_cap, false);
    CHECK(ok.verdict == Verdict::Pass);
    CHECK(ok.checks[2].rows[1].str() == "VB(i)  2  undef  SKIP");
    CHECK(to_string(Verdict::PassPartial) == "PASS-PARTIAL");

    report.transition_bounds["nope"] = BoundExpr::constant(1);
    CHECK_THROWS_AS(check_soundness(a, report, grid), InputError);
}

TEST_CASE("capped sweeps pass partially", "[oracle]") {
    const auto a = load_dcp("example_a.dcp");
    BoundReport report;
    report.transition_bounds["t1"] = BoundExpr::symbol("n");
    const auto grid = valuation_grid(a.sym_consts(), 3, 3);
    CHECK(check_soundness(a, report, grid, 3).verdict == Verdict::PassPartial);
}
