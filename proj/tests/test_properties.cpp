// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>

#include "catch_amalgamated.hpp"
#include "dcbound/abstractor.hpp"
#include "dcbound/bound_expr.hpp"
#include "dcbound/local_bounds.hpp"
#include "dcbound/oracle.hpp"
#include "dcbound/reset_graph.hpp"
#include "random_expr.hpp"
#include "random_runs.hpp"
#include "test_data.hpp"

using namespace dcbound;
namespace t = dcbound::testing;

namespace {

const std::vector<std::string> expr_syms{"m", "n", "k"};

// Every path in the reset graph that ends at var, each listed once.
void paths_into(const ResetGraph& g, const std::string& var, ResetPath& current, std::vector<ResetPath>& out) {
    for (const auto& e : g.edges_into(var)) {
        current.edges.push_back(e);
        out.push_back(current);
        if (e.source.is_variable() && current.edges.size() < 8) paths_into(g, e.source.name, current, out);
        current.edges.pop_back();
    }
}

std::vector<ResetPath> all_paths_into(const ResetGraph& g, const std::string& var) {
    std::vector<ResetPath> out;
    ResetPath current;
    paths_into(g, var, current, out);
    return out;
}

std::vector<std::string> abstraction_programs() {
    return {
        t::read_data("example_3.prog"),
        "prog\nparams: n\nvars: i\nentry: a\nexit: z\n"
        "trans t0: a -> b { i := n; }\n"
        "trans t1: b -> b when i > 0 { i := i - 1; }\n"
        "trans t2: b -> z when i <= 0 { }\n",
        "prog\nparams: m, n\nvars: i, j\nentry: a\nexit: z\n"
        "trans t0: a -> b { i := 0; j := n + m + 1; }\n"
        "trans t1: b -> b when i < j { i := i + 2; j := ?; }\n"
        "trans t2: b -> c when i >= j { j := i + 3; }\n"
        "trans t3: c -> c when j > 0 { j := j - 1; i := i; }\n"
        "trans t4: c -> z { }\n",
        "prog\nparams: n\nvars: x, y\nentry: a\nexit: z\n"
        "trans t0: a -> b { x := n; y := 0; }\n"
        "trans t1: b -> b when x > 0 { x := x - 1; y := y + 1; }\n"
        "trans t2: b -> c { }\n"
        "trans t3: c -> c when y > 0 { y := y - 1; }\n"
        "trans t4: c -> z { }\n",
    };
}

LinExpr meaning(const Abstraction& abs, const Atom& a) {
    switch (a.kind) {
    case Atom::Kind::Int: return LinExpr::constant(a.value);
    case Atom::Kind::Sym: {
        auto it = abs.fresh_constants.find(a.name);
        return it != abs.fresh_constants.end() ? it->second : LinExpr::variable(a.name);
    }
    case Atom::Kind::Var: break;
    }
    for (const auto& n : abs.norms) {
        if (n.name == a.name) return n.norm;
    }
    FAIL("unknown abstract variable " << a.name);
    return {};
}

} // namespace

TEST_CASE("normalization is idempotent, faithful and printable", "[properties][bound_expr]") {
    std::mt19937_64 rng(20241017);
    for (int i = 0; i < 1000; ++i) {
        const auto raw = t::random_raw_expr(rng, expr_syms, 4);
        const auto norm = normalize(raw);
        INFO(raw.str() << "  =>  " << norm.str());
        REQUIRE(normalize(norm) == norm);
        REQUIRE(parse_bound_expr(norm.str()) == norm);
        for (int k = 0; k < 4; ++k) {
            const auto v = t::random_valuation(rng, expr_syms, 0, 16);
            REQUIRE(evaluate(norm, v) == evaluate(raw, v));
        }
    }
}

TEST_CASE("undef absorbs every builder", "[properties][bound_expr]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto e = t::random_raw_expr(rng, expr_syms, 3, false);
        for (auto op : {BoundOp::Add, BoundOp::Mul, BoundOp::Max, BoundOp::Min}) {
            CHECK(build(op, {e, BoundExpr::undefined()}).is_undefined());
            CHECK(build(op, {BoundExpr::undefined(), e}).is_undefined());
        }
    }
}

TEST_CASE("resets and increments cover every update", "[properties][dcp]") {
    for (const auto& ex : t::worked_examples()) {
        INFO(ex.name);
        for (const auto& v : ex.dcp.variables()) {
            const auto rs = resets(ex.dcp, v);
            const auto is = increments(ex.dcp, v);
            for (TransitionIndex i = 0; i < ex.dcp.transitions().size(); ++i) {
                const auto* dc = ex.dcp.transition(i).update_of(v);
                const bool in_resets = std::any_of(rs.begin(), rs.end(), [&](const Reset& r) {
                    return r.transition == i;
                });
                const bool in_incr = std::any_of(is.begin(), is.end(), [&](const Increment& r) {
                    return r.transition == i;
                });
                CHECK_FALSE((in_resets && in_incr));
                if (!dc) {
                    CHECK_FALSE((in_resets || in_incr));
                } else if (dc->rhs != Atom::variable(v)) {
                    CHECK(in_resets);
                } else {
                    CHECK(in_incr == (dc->offset > 0));
                }
            }
        }
    }
}

TEST_CASE("reset path soundness is suffix-closed", "[properties][reset_graph]") {
    for (const auto& ex : t::worked_examples()) {
        INFO(ex.name);
        const auto pruned = build_reset_graph(ex.dcp);
        for (const auto& v : pruned.dcp.variables()) {
            for (const auto& path : all_paths_into(pruned.graph, v)) {
                if (!is_sound(pruned.dcp, path)) continue;
                for (std::size_t len = 1; len < path.edges.size(); ++len) {
                    const auto end = path.edges.begin() + static_cast<std::ptrdiff_t>(len);
                    const ResetPath suffix{{path.edges.begin(), end}};
                    INFO(path.str(pruned.dcp) << " / " << suffix.str(pruned.dcp));
                    CHECK(is_sound(pruned.dcp, suffix));
                }
            }
        }
    }
}

TEST_CASE("optimal reset paths are maximal and cover every reset", "[properties][reset_graph]") {
    for (const auto& ex : t::worked_examples()) {
        INFO(ex.name);
        const auto pruned = build_reset_graph(ex.dcp);
        for (const auto& v : pruned.dcp.variables()) {
            const auto paths = optimal_reset_paths(pruned.dcp, pruned.graph, v);
            REQUIRE(paths);
            for (const auto& p : *paths) {
                INFO(p.str(pruned.dcp));
                CHECK(is_sound(pruned.dcp, p));
                if (!p.in().is_variable()) continue;
                for (const auto& e : pruned.graph.edges_into(p.in().name)) {
                    auto longer = p;
                    longer.edges.push_back(e);
                    CHECK_FALSE(is_sound(pruned.dcp, longer));
                }
            }
            for (const auto& e : pruned.graph.edges_into(v)) {
                CHECK(std::any_of(paths->begin(), paths->end(),
                                  [&](const ResetPath& p) { return p.edges.front() == e; }));
            }
        }
    }
}

TEST_CASE("random runs respect local bounds and oracle counts", "[properties][oracle]") {
    std::mt19937_64 rng(99);
    for (const auto& ex : t::worked_examples()) {
        INFO(ex.name);
        const auto& dcp = ex.dcp;
        const auto lb = local_bound_map(dcp);
        const auto& vars = dcp.variables();
        auto slot = [&](const std::string& v) {
            return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
        };
        std::size_t complete = 0;
        for (const auto& val : valuation_grid(dcp.sym_consts(), 0, 3)) {
            INFO(format_valuation(val));
            const auto oracle = explore(dcp, val);
            REQUIRE(oracle.exhausted);
            for (TransitionIndex i = 0; i < lb.size(); ++i) {
                if (lb[i].kind == LocalBound::Kind::One) CHECK(oracle.max_count[i] <= 1);
            }
            for (int r = 0; r < 500; ++r) {
                const auto run = t::random_run(dcp, val, rng, 2, 400);
                for (TransitionIndex i = 0; i < lb.size(); ++i) {
                    const auto n = static_cast<std::int64_t>(run.count(i));
                    REQUIRE(n <= oracle.max_count[i]);
                    if (!run.complete) continue;
                    if (i == 0) ++complete;
                    if (lb[i].kind == LocalBound::Kind::One) REQUIRE(n <= 1);
                    if (lb[i].kind == LocalBound::Kind::Variable) {
                        REQUIRE(run.count(i) <= run.decreases(slot(lb[i].variable)));
                    }
                }
            }
        }
        CHECK(complete > 1000);
    }
}

TEST_CASE("abstraction constraints and guards are invariant", "[properties][abstractor]") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> value(-8, 8);
    for (const auto& text : abstraction_programs()) {
        const auto prog = parse_program_or_throw(text);
        const auto abs = abstract_program(prog);
        CHECK(validate(abs.dcp).empty());
        std::vector<std::string> names = prog.params();
        names.insert(names.end(), prog.variables().begin(), prog.variables().end());
        for (const auto& pt : prog.transitions()) {
            const auto& at = abs.dcp.transition(abs.dcp.transition_index(pt.id));
            int sampled = 0;
            for (int attempt = 0; attempt < 200000 && sampled < 1000; ++attempt) {
                std::map<std::string, std::int64_t> s1;
                for (const auto& n : names) s1[n] = value(rng);
                if (!std::all_of(pt.guard.begin(), pt.guard.end(), [&](const Comparison& c) { return c.holds(s1); })) {
                    continue;
                }
                ++sampled;
                auto s2 = s1;
                for (const auto& a : pt.updates) s2[a.var] = a.value ? a.value->evaluate(s1) : value(rng);
                for (const auto& g : at.guard) {
                    INFO(pt.id << " guard " << g);
                    REQUIRE(meaning(abs, Atom::variable(g)).evaluate(s1) > 0);
                }
                for (const auto& dc : at.updates) {
                    INFO(pt.id << " " << dc.lhs << "' <= " << dc.rhs.str() << " + " << dc.offset);
                    const auto after = meaning(abs, Atom::variable(dc.lhs)).evaluate(s2);
                    REQUIRE(after <= meaning(abs, dc.rhs).evaluate(s1) + dc.offset);
                }
            }
            CHECK(sampled == 1000);
        }
    }
}

TEST_CASE("abstraction terminates under every depth limit", "[properties][abstractor]") {
    for (const auto& text : abstraction_programs()) {
        const auto prog = parse_program_or_throw(text);
        for (std::size_t depth = 0; depth <= 6; ++depth) {
            AbstractionOptions opts;
            opts.depth_limit = depth;
            const auto abs = abstract_program(prog, opts);
            CHECK(validate(abs.dcp).empty());
        }
    }
}

TEST_CASE("exploration is deterministic", "[properties][oracle]") {
    for (const auto& ex : t::worked_examples()) {
        const auto grid = valuation_grid(ex.dcp.sym_consts(), 2, 2);
        CHECK(explore(ex.dcp, grid[0]) == explore(ex.dcp, grid[0]));
    }
}
