// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/report.hpp"

#include <sstream>

namespace dcbound {

BoundReport report_of(const AnalysisResult& result) {
    return {result.transition_bounds, result.variable_bounds, result.complexity};
}

std::string format_report(const BoundReport& report, bool with_variable_bounds) {
    std::ostringstream os;
    for (const auto& [id, b] : report.transition_bounds) os << "TB(" << id << ") = " << b.str() << '\n';
    if (with_variable_bounds) {
        for (const auto& [v, b] : report.variable_bounds) os << "VB(" << v << ") = " << b.str() << '\n';
    }
    os << "complexity = " << report.complexity.str() << '\n';
    return os.str();
}

namespace {
std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}
} // namespace

BoundReport parse_report(std::string_view text) {
    BoundReport out;
    bool saw_complexity = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find(" = ");
        if (eq == std::string_view::npos) {
            throw InputError("report line " + std::to_string(line_no) + ": expected 'name = bound'");
        }
        const auto lhs = trim(line.substr(0, eq));
        const auto bound = parse_bound_expr(line.substr(eq + 3));
        auto inner = [&](std::string_view prefix) -> std::optional<std::string> {
            if (lhs.size() > prefix.size() + 1 && lhs.starts_with(prefix) && lhs.back() == ')') {
                return std::string(lhs.substr(prefix.size(), lhs.size() - prefix.size() - 1));
            }
            return std::nullopt;
        };
        if (lhs == "complexity") {
            out.complexity = bound;
            saw_complexity = true;
        } else if (auto id = inner("TB(")) {
            out.transition_bounds[*id] = bound;
        } else if (auto var = inner("VB(")) {
            out.variable_bounds[*var] = bound;
        } else {
            throw InputError("report line " + std::to_string(line_no) + ": unknown entry '" + std::string(lhs) + "'");
        }
    }
    if (!saw_complexity) out.complexity = BoundExpr::undefined();
    return out;
}

} // namespace dcbound
