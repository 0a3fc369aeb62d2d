// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include <exception>

#include "dcbound/oracle.hpp"

namespace dcbound {

std::vector<Exploration> explore_all_serial(const Dcp& dcp, std::span<const Valuation> valuations,
                                            std::size_t step_cap) {
    std::vector<Exploration> out;
    out.reserve(valuations.size());
    for (const auto& v : valuations) out.push_back(explore(dcp, v, step_cap));
    return out;
}

std::vector<Exploration> explore_all_parallel(const Dcp& dcp, std::span<const Valuation> valuations,
                                              std::size_t step_cap) {
    const auto n = static_cast<std::ptrdiff_t>(valuations.size());
    std::vector<Exploration> out(valuations.size());
    std::vector<std::exception_ptr> errors(valuations.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = explore(dcp, valuations[i], step_cap);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<Valuation> valuation_grid(std::span<const std::string> consts, std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InputError("empty valuation range");
    std::vector<Valuation> out{Valuation{}};
    for (const auto& c : consts) {
        std::vector<Valuation> next;
        for (const auto& partial : out) {
            for (auto v = lo; v <= hi; ++v) {
                next.push_back(partial);
                next.back()[c] = v;
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::PassPartial: return "PASS-PARTIAL";
    case Verdict::Fail: return "FAIL";
    }
    return {};
}

std::string CheckRow::str() const {
    auto show = [](std::optional<std::int64_t> x) -> std::string {
        if (!x) return "-";
        if (*x == unbounded_count) return "inf";
        return std::to_string(*x);
    };
    std::string out = item + "  " + show(observed) + "  " + (bound ? std::to_string(*bound) : "undef") + "  ";
    switch (status) {
    case Status::Ok: return out + "OK";
    case Status::Violation: return out + "VIOLATION";
    case Status::Skip: return out + "SKIP";
    }
    return out;
}

std::size_t SoundnessResult::violations() const {
    std::size_t n = 0;
    for (const auto& c : checks) {
        for (const auto& r : c.rows) n += r.status == CheckRow::Status::Violation ? 1 : 0;
    }
    return n;
}

std::string format_valuation(const Valuation& v) {
    std::string out;
    for (const auto& [name, value] : v) {
        if (!out.empty()) out += ',';
        out += name + "=" + std::to_string(value);
    }
    return out.empty() ? "(none)" : out;
}

namespace {

CheckRow compare(std::string item, std::optional<std::int64_t> observed, const BoundExpr& bound,
                 const Valuation& valuation) {
    CheckRow row{std::move(item), observed, evaluate(bound, valuation), CheckRow::Status::Ok};
    if (!row.bound) {
        row.status = CheckRow::Status::Skip;
    } else if (observed && *observed > *row.bound) {
        row.status = CheckRow::Status::Violation;
    }
    return row;
}

} // namespace

SoundnessResult check_soundness(const Dcp& dcp, const BoundReport& report, std::span<const Valuation> valuations,
                                std::size_t step_cap, bool parallel) {
    auto explorations = parallel ? explore_all_parallel(dcp, valuations, step_cap)
                                 : explore_all_serial(dcp, valuations, step_cap);
    SoundnessResult out;
    bool partial = false;
    for (std::size_t i = 0; i < valuations.size(); ++i) {
        ValuationCheck check{valuations[i], std::move(explorations[i]), {}};
        partial |= !check.exploration.exhausted;
        for (const auto& [id, bound] : report.transition_bounds) {
            const auto t = dcp.find_transition(id);
            if (!t) throw InputError("bound report names unknown transition '" + id + "'");
            check.rows.push_back(compare(id, check.exploration.max_count[*t], bound, valuations[i]));
        }
        for (const auto& [var, bound] : report.variable_bounds) {
            auto it = check.exploration.max_value.find(var);
            if (it == check.exploration.max_value.end()) {
                throw InputError("bound report names unknown variable '" + var + "'");
            }
            check.rows.push_back(compare("VB(" + var + ")", it->second, bound, valuations[i]));
        }
        out.checks.push_back(std::move(check));
    }
    if (out.violations() > 0) {
        out.verdict = Verdict::Fail;
    } else if (partial) {
        out.verdict = Verdict::PassPartial;
    }
    return out;
}

} // namespace dcbound
