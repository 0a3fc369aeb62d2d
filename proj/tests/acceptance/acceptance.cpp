// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
//
// One line per acceptance criterion; exits nonzero when any criterion fails.
#include <sys/wait.h>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcbound/abstractor.hpp"
#include "dcbound/bound_engine.hpp"
#include "dcbound/oracle.hpp"
#include "dcbound/report.hpp"
#include "test_data.hpp"

using namespace dcbound;
namespace t = dcbound::testing;

namespace {

class Checker {
  public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void equal(const std::string& got, const std::string& want, const std::string& what) {
        if (got != want) failures_.push_back(what + ": got '" + got + "', want '" + want + "'");
    }
    [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }

  private:
    std::vector<std::string> failures_;
};

AnalysisResult analyze_file(const std::string& file, AnalysisMode mode) {
    AnalysisOptions opts;
    opts.mode = mode;
    return analyze(t::load_dcp(file), opts);
}

std::string tb(const AnalysisResult& r, const std::string& id) { return r.transition_bounds.at(id).str(); }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DCBOUND_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

BoundExpr rename_symbols(const BoundExpr& e, const std::map<std::string, std::string>& names) {
    if (e.kind() == BoundExpr::Kind::Sym) {
        auto it = names.find(e.name());
        return it == names.end() ? e : BoundExpr::symbol(it->second);
    }
    if (e.args().empty()) return e;
    std::vector<BoundExpr> args;
    for (const auto& a : e.args()) args.push_back(rename_symbols(a, names));
    return normalize(BoundExpr::raw(e.kind(), std::move(args)));
}

constexpr AnalysisMode all_modes[] = {AnalysisMode::Free, AnalysisMode::Ctx, AnalysisMode::Opt};

void criterion_1(Checker& c) {
    for (auto mode : all_modes) {
        const auto r = analyze_file("example_a.dcp", mode);
        const auto m = to_string(mode);
        c.equal(tb(r, "t1"), "n", m + " TB(t1)");
        c.equal(tb(r, "t2"), "n", m + " TB(t2)");
        c.equal(r.complexity.str(), "2*n", m + " complexity");
    }
}

void criterion_2(Checker& c) {
    const auto free = analyze_file("example_b.dcp", AnalysisMode::Free);
    c.equal(tb(free, "t1"), "n", "free TB(t1)");
    c.equal(tb(free, "t2"), "n", "free TB(t2)");
    c.equal(tb(free, "t3"), "n*n", "free TB(t3)");
    c.equal(free.complexity.str(), "2*n + n*n", "free complexity");
    c.equal(free.variable_bounds.at("k").str(), "n", "free VB(k)");
    const auto ctx = analyze_file("example_b.dcp", AnalysisMode::Ctx);
    c.equal(tb(ctx, "t3"), "n + n*n", "ctx TB(t3)");
    const auto dcp = t::load_dcp("example_b.dcp");
    const auto res = check_soundness(dcp, report_of(ctx), valuation_grid(dcp.sym_consts(), 0, 3));
    c.equal(to_string(res.verdict), "PASS", "ctx oracle check for n in 0..3");
}

void criterion_3(Checker& c) {
    const auto free = analyze_file("example_c.dcp", AnalysisMode::Free);
    c.equal(tb(free, "t2"), "n*n", "free TB(t2)");
    const auto ctx = analyze_file("example_c.dcp", AnalysisMode::Ctx);
    c.equal(tb(ctx, "t2"), "n", "ctx TB(t2)");
    c.equal(ctx.complexity.str(), "2*n", "ctx complexity");
}

void criterion_4(Checker& c) {
    c.equal(tb(analyze_file("example_1.dcp", AnalysisMode::Ctx), "t3"), "2*n", "ctx TB(t3)");
    const auto opt = analyze_file("example_1.dcp", AnalysisMode::Opt);
    c.equal(tb(opt, "t3"), "n", "opt TB(t3)");
    c.equal(opt.complexity.str(), "2*n", "opt complexity");
}

void criterion_5(Checker& c) {
    const auto free = analyze_file("example_2.dcp", AnalysisMode::Free);
    c.equal(tb(free, "t3"), "2*n + max(m1,m2)", "free TB(t3)");
    c.equal(free.variable_bounds.at("x").str(), "2*n + max(m1,m2)", "free VB(x)");
    c.equal(free.complexity.str(), "3*n + max(m1,m2)", "free complexity");
}

void criterion_6(Checker& c) {
    AbstractionOptions opts;
    opts.keep_names = true;
    const auto abs = abstract_program(t::load_program("example_3.prog"), opts);
    const auto renamed = t::rename_variables(abs.dcp, t::example_3_names());
    const auto expected = t::load_dcp("example_3_abstract.dcp");
    c.expect(t::canonical_text(renamed) == t::canonical_text(expected), "abstraction differs from the expected DCP");
    c.expect(abs.warnings.empty(), "abstraction produced warnings");

    const auto lb = local_bound_map(renamed);
    auto lb_of = [&](const char* id) { return lb[renamed.transition_index(id)].str(); };
    c.equal(lb_of("t4"), "p", "local bound of t4");
    for (const char* id : {"t1", "t2a", "t2b", "t3a", "t3b", "t5", "t6"}) {
        c.equal(lb_of(id), "x", std::string("local bound of ") + id);
    }
    c.equal(lb_of("t0"), "1", "local bound of t0");

    const auto pruned = build_reset_graph(renamed);
    const auto paths = optimal_reset_paths(pruned.dcp, pruned.graph, "p");
    std::set<std::string> got;
    if (paths) {
        for (const auto& p : *paths) got.insert(p.str(pruned.dcp));
    }
    const std::set<std::string> want{"0 --t0--> r --t2a--> q --t3a--> p", "0 --t5--> r --t2a--> q --t3a--> p",
                                     "0 --t0--> q --t3a--> p", "0 --t5--> q --t3a--> p"};
    c.expect(got == want, "reset paths into p differ from the expected four");

    const std::map<std::string, std::string> l_to_n{{"l", "n"}};
    for (auto [mode, want_tb] : {std::pair{AnalysisMode::Ctx, "2*n"}, std::pair{AnalysisMode::Opt, "n"}}) {
        AnalysisOptions ao;
        ao.mode = mode;
        const auto r = analyze(abs.dcp, ao);
        c.equal(rename_symbols(r.transition_bounds.at("t4"), l_to_n).str(), want_tb, to_string(mode) + " TB(t4)");
    }
}

void criterion_7(Checker& c) {
    for (const auto& ex : t::worked_examples()) {
        const auto grid = valuation_grid(ex.dcp.sym_consts(), 0, 4);
        for (auto mode : all_modes) {
            AnalysisOptions opts;
            opts.mode = mode;
            const auto res = check_soundness(ex.dcp, report_of(analyze(ex.dcp, opts)), grid);
            c.equal(to_string(res.verdict), "PASS", ex.name + " " + to_string(mode));
        }
    }
}

void criterion_8(Checker& c) {
    struct Case {
        const char* file;
        AnalysisMode mode;
        const char* transition;
        std::int64_t n;
        std::int64_t count;
    };
    for (const auto& k : {Case{"example_a.dcp", AnalysisMode::Free, "t2", 3, 3},
                          Case{"example_b.dcp", AnalysisMode::Free, "t3", 2, 4},
                          Case{"example_1.dcp", AnalysisMode::Opt, "t3", 3, 3}}) {
        const auto dcp = t::load_dcp(k.file);
        const Valuation val{{"n", k.n}};
        const auto ex = explore(dcp, val);
        const auto observed = ex.max_count[dcp.transition_index(k.transition)];
        const auto bound = evaluate(analyze_file(k.file, k.mode).transition_bounds.at(k.transition), val);
        const std::string what = std::string(k.file) + " " + k.transition;
        c.expect(observed == k.count, what + " observed " + std::to_string(observed));
        c.expect(bound == k.count, what + " bound is not tight");
    }
}

void criterion_9(Checker& c) {
    const std::string cmd = std::string(DCBOUND_UNIT_TESTS) + " \"[properties]\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "property suites failed");
}

void criterion_10(Checker& c) {
    const auto nd = parse_dcp(t::read_data("nondeterministic.dcp"));
    c.expect(!nd && !nd.diagnostics.empty() && nd.diagnostics[0].str().starts_with("6:1: ") &&
                 nd.diagnostics[0].message.find("not deterministic") != std::string::npos,
             "nondeterminism diagnostic");
    const auto ud = parse_dcp(t::read_data("undefined_read.dcp"));
    c.expect(!ud && !ud.diagnostics.empty() && ud.diagnostics[0].str().starts_with("6:1: ") &&
                 ud.diagnostics[0].message.find("undefined") != std::string::npos,
             "well-definedness diagnostic");
    const auto cyc = analyze_file("counters.dcp", AnalysisMode::Ctx);
    c.expect(cyc.complexity.is_undefined() && cyc.transition_bounds.at("t1").is_undefined(),
             "recursive bounds are not undef");
    const auto data = [](const char* f) { return t::data_path(f); };
    c.expect(run_cli("analyze " + data("counters.dcp")) == 2, "analyze of recursive bounds exits 2");
    c.expect(run_cli("analyze " + data("ping_pong.dcp")) == 2, "analyze of a reset cycle exits 2");
    c.expect(run_cli("analyze " + data("nondeterministic.dcp")) == 1, "invalid DCP exits 1");

    const auto dcp = t::load_dcp("example_a.dcp");
    const auto report = parse_report(t::read_data("wrong_bounds.txt"));
    const auto res = check_soundness(dcp, report, valuation_grid(dcp.sym_consts(), 0, 3));
    c.equal(to_string(res.verdict), "FAIL", "injected fault verdict");
    c.expect(run_cli("validate " + data("example_a.dcp") + " --bounds " + data("wrong_bounds.txt")) == 3,
             "validate with an injected fault exits 3");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
        {"example A bounds agree in all modes", criterion_1},
        {"example B bounds and oracle soundness", criterion_2},
        {"example C context-sensitive bound", criterion_3},
        {"example 1 amortized bounds", criterion_4},
        {"example 2 bounds with symbolic maxima", criterion_5},
        {"example 3 abstraction, local bounds, reset paths and bounds", criterion_6},
        {"oracle sweep over all examples and modes", criterion_7},
        {"tightness on small valuations", criterion_8},
        {"property suites", criterion_9},
        {"negative inputs", criterion_10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const bool ok = c.failures().empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << i + 1 << ": " << criteria[i].first << '\n';
        for (const auto& f : c.failures()) std::cout << "       " << f << '\n';
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
