// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dcbound/abstractor.hpp"
#include "dcbound/bound_engine.hpp"
#include "dcbound/dcp.hpp"
#include "dcbound/oracle.hpp"
#include "dcbound/program.hpp"
#include "dcbound/report.hpp"

using namespace dcbound;

namespace {

enum Exit : int {
    ok = 0,
    usage_error = 1,
    undefined_complexity = 2,
    validation_failed = 3,
    cycle_cap = 4,
    partial_pass = 5,
};

struct Options {
    std::string file;
    std::string format;
    std::string mode{"ctx"};
    bool variable_bounds{false};
    std::string dot_file;
    std::string out_file;
    std::string bounds_file;
    std::string range;
    std::string var;
    std::vector<std::string> assignments;
    std::size_t max_cycles{default_cycle_cap};
    std::size_t max_reset_paths{default_reset_path_cap};
    std::size_t depth{default_abstraction_depth};
    std::size_t max_steps{default_step_cap};
    bool keep_names{false};
    bool verbose{false};
};

struct Loaded {
    Dcp dcp;
    std::optional<Abstraction> abstraction;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

std::string detect_format(const Options& opt, const std::string& text) {
    if (!opt.format.empty()) return opt.format;
    if (opt.file.ends_with(".dcp")) return "dcp";
    if (opt.file.ends_with(".prog")) return "prog";
    std::istringstream lines(text);
    std::string word;
    while (lines >> word) {
        if (word.starts_with("#")) {
            std::getline(lines, word);
            continue;
        }
        return word == "prog" ? "prog" : "dcp";
    }
    return "dcp";
}

void print_diagnostics(const std::string& file, const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) std::cerr << file << ':' << d.str() << '\n';
}

std::optional<Program> load_program(const Options& opt, const std::string& text) {
    auto parsed = parse_program(text);
    if (!parsed) {
        print_diagnostics(opt.file, parsed.diagnostics);
        return std::nullopt;
    }
    return std::move(*parsed.value);
}

Abstraction abstract_with(const Options& opt, const Program& prog) {
    auto abs = abstract_program(prog, {opt.depth, opt.max_cycles, opt.keep_names});
    for (const auto& w : abs.warnings) std::cerr << "warning: " << w << '\n';
    return abs;
}

std::optional<Loaded> load(const Options& opt) {
    const auto text = read_file(opt.file);
    const auto format = detect_format(opt, text);
    if (format == "prog") {
        auto prog = load_program(opt, text);
        if (!prog) return std::nullopt;
        auto abs = abstract_with(opt, *prog);
        const auto problems = validate(abs.dcp);
        if (!problems.empty()) {
            print_diagnostics(opt.file, problems);
            return std::nullopt;
        }
        if (opt.verbose) std::cerr << to_text(abs.dcp, abs.comments());
        Dcp dcp = abs.dcp;
        return Loaded{std::move(dcp), std::move(abs)};
    }
    auto parsed = parse_dcp(text);
    if (!parsed) {
        print_diagnostics(opt.file, parsed.diagnostics);
        return std::nullopt;
    }
    return Loaded{std::move(*parsed.value), std::nullopt};
}

AnalysisOptions analysis_options(const Options& opt) {
    auto mode = parse_mode(opt.mode);
    if (!mode) throw InputError("unknown mode '" + opt.mode + "' (expected free, ctx or opt)");
    return {*mode, opt.max_cycles, opt.max_reset_paths, true};
}

void print_warnings(const AnalysisResult& result) {
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
}

int run_analyze(const Options& opt) {
    auto loaded = load(opt);
    if (!loaded) return usage_error;
    const auto result = analyze(loaded->dcp, analysis_options(opt));
    print_warnings(result);
    if (!opt.dot_file.empty()) write_file(opt.dot_file, build_reset_graph(loaded->dcp).graph.to_dot(loaded->dcp));
    std::cout << format_report(report_of(result), opt.variable_bounds);
    return result.complexity.is_undefined() ? undefined_complexity : ok;
}

int run_abstract(const Options& opt) {
    const auto text = read_file(opt.file);
    if (detect_format(opt, text) != "prog") throw InputError("abstract expects an integer program");
    auto prog = load_program(opt, text);
    if (!prog) return usage_error;
    const auto abs = abstract_with(opt, *prog);
    const auto out = to_text(abs.dcp, abs.comments());
    if (opt.out_file.empty()) {
        std::cout << out;
    } else {
        write_file(opt.out_file, out);
    }
    return ok;
}

Valuation parse_assignment(const std::string& text) {
    Valuation v;
    std::istringstream parts(text);
    std::string item;
    while (std::getline(parts, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("bad assignment '" + item + "' (expected name=value)");
        try {
            std::size_t used = 0;
            const auto value = std::stoll(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
            v[item.substr(0, eq)] = value;
        } catch (const std::logic_error&) {
            throw InputError("bad value in assignment '" + item + "'");
        }
    }
    return v;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw InputError("bad range '" + text + "' (expected LO..HI)");
    try {
        return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw InputError("bad range '" + text + "' (expected LO..HI)");
    }
}

int run_validate(const Options& opt) {
    auto loaded = load(opt);
    if (!loaded) return usage_error;
    const auto& dcp = loaded->dcp;

    BoundReport report;
    if (!opt.bounds_file.empty()) {
        report = parse_report(read_file(opt.bounds_file));
    } else {
        const auto result = analyze(dcp, analysis_options(opt));
        print_warnings(result);
        report = report_of(result);
    }

    std::vector<Valuation> valuations;
    for (const auto& a : opt.assignments) valuations.push_back(parse_assignment(a));
    if (!opt.range.empty() || valuations.empty()) {
        const auto [lo, hi] = parse_range(opt.range.empty() ? "0..3" : opt.range);
        for (auto& v : valuation_grid(dcp.sym_consts(), lo, hi)) valuations.push_back(std::move(v));
    }
    for (const auto& v : valuations) {
        for (const auto& c : dcp.sym_consts()) {
            if (!v.contains(c)) throw InputError("valuation " + format_valuation(v) + " has no value for '" + c + "'");
        }
        for (const auto& [name, value] : v) {
            if (value < 0) throw InputError("symbolic constant '" + name + "' must be nonnegative");
        }
    }

    const auto result = check_soundness(dcp, report, valuations, opt.max_steps);
    for (const auto& check : result.checks) {
        std::cout << "valuation " << format_valuation(check.valuation);
        if (!check.exploration.exhausted) std::cout << " (state cap reached)";
        std::cout << '\n';
        for (const auto& row : check.rows) std::cout << row.str() << '\n';
    }
    std::cout << to_string(result.verdict) << '\n';
    switch (result.verdict) {
    case Verdict::Pass: return ok;
    case Verdict::PassPartial: return partial_pass;
    case Verdict::Fail: return validation_failed;
    }
    return ok;
}

int run_resets(const Options& opt) {
    auto loaded = load(opt);
    if (!loaded) return usage_error;
    const auto pruned = build_reset_graph(loaded->dcp);
    for (const auto& v : pruned.removed) {
        std::cerr << "warning: variable '" << v << "' lies on or depends on a reset cycle and was removed\n";
    }
    if (!opt.dot_file.empty()) write_file(opt.dot_file, pruned.graph.to_dot(pruned.dcp));
    std::vector<std::string> vars = pruned.dcp.variables();
    if (!opt.var.empty()) {
        if (!loaded->dcp.is_variable(opt.var)) throw InputError("unknown variable '" + opt.var + "'");
        vars = {opt.var};
    }
    for (const auto& v : vars) {
        if (pruned.removed.contains(v)) continue;
        const auto paths = optimal_reset_paths(pruned.dcp, pruned.graph, v, opt.max_reset_paths);
        if (!paths) {
            std::cerr << "warning: more than " << opt.max_reset_paths << " optimal reset paths into '" << v << "'\n";
            continue;
        }
        for (const auto& p : *paths) std::cout << v << ": " << p.str(pruned.dcp) << '\n';
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static bounds for difference constraint programs"};
    app.set_version_flag("--version", "dcbound 0.1.0");
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "Input program (.dcp or .prog)")->required();
        cmd->add_option("--format", opt.format, "Input format")->check(CLI::IsMember({"dcp", "prog"}));
        cmd->add_option("--max-cycles", opt.max_cycles, "Cap on enumerated simple cycles")->capture_default_str();
        cmd->add_option("--abstraction-depth", opt.depth, "Norm depth limit when abstracting")->capture_default_str();
        cmd->add_flag("--keep-names", opt.keep_names, "Name abstract variables after their norms");
        cmd->add_flag("-v,--verbose", opt.verbose, "Print the abstracted program to stderr");
    };
    auto analysis = [&](CLI::App* cmd) {
        cmd->add_option("--mode", opt.mode, "free, ctx or opt")
            ->capture_default_str()
            ->check(CLI::IsMember({"free", "ctx", "opt"}));
        cmd->add_option("--max-reset-paths", opt.max_reset_paths, "Cap on optimal reset paths per variable")
            ->capture_default_str();
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "Print transition bounds and the complexity bound");
    common(analyze_cmd);
    analysis(analyze_cmd);
    analyze_cmd->add_flag("--vb", opt.variable_bounds, "Also print variable bounds");
    analyze_cmd->add_option("--dot", opt.dot_file, "Write the reset graph in DOT format");

    auto* abstract_cmd = app.add_subcommand("abstract", "Abstract an integer program into a DCP");
    common(abstract_cmd);
    abstract_cmd->add_option("-o,--output", opt.out_file, "Output file");

    auto* validate_cmd = app.add_subcommand("validate", "Check bounds against exhaustive execution");
    common(validate_cmd);
    analysis(validate_cmd);
    validate_cmd->add_option("--assign", opt.assignments, "Valuation such as n=3,m1=2 (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    validate_cmd->add_option("--range", opt.range, "Sweep every constant over LO..HI (default 0..3)");
    validate_cmd->add_option("--max-steps", opt.max_steps, "Cap on explored states per valuation")
        ->capture_default_str();
    validate_cmd->add_option("--bounds", opt.bounds_file, "Check this report instead of analyzing");

    auto* resets_cmd = app.add_subcommand("resets", "Print optimal reset paths");
    common(resets_cmd);
    analysis(resets_cmd);
    resets_cmd->add_option("--var", opt.var, "Only paths into this variable");
    resets_cmd->add_option("--dot", opt.dot_file, "Write the reset graph in DOT format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (*analyze_cmd) return run_analyze(opt);
        if (*abstract_cmd) return run_abstract(opt);
        if (*validate_cmd) return run_validate(opt);
        if (*resets_cmd) return run_resets(opt);
    } catch (const CycleCapExceeded& e) {
        std::cerr << "error: " << e.what() << "; raise --max-cycles\n";
        return cycle_cap;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}
