// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>

#include "dcbound/bound_engine.hpp"
#include "dcbound/bound_expr.hpp"

namespace dcbound {

// Textual analysis output: TB(id) lines, optional VB(var) lines, complexity.
struct BoundReport {
    std::map<std::string, BoundExpr> transition_bounds;
    std::map<std::string, BoundExpr> variable_bounds;
    BoundExpr complexity;
};

BoundReport report_of(const AnalysisResult& result);
std::string format_report(const BoundReport& report, bool with_variable_bounds);
BoundReport parse_report(std::string_view text); // throws InputError

} // namespace dcbound
