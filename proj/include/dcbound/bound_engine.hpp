// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dcbound/bound_expr.hpp"
#include "dcbound/dcp.hpp"
#include "dcbound/local_bounds.hpp"
#include "dcbound/reset_graph.hpp"

namespace dcbound {

enum class AnalysisMode { Free, Ctx, Opt };

std::string to_string(AnalysisMode mode);
std::optional<AnalysisMode> parse_mode(std::string_view text);

struct EngineOptions {
    AnalysisMode mode{AnalysisMode::Ctx};
    std::size_t max_reset_paths{default_reset_path_cap};
    bool memoize{true};
};

// Mutually recursive transition, variable and increment bounds over a pruned
// working copy. Re-entering a computation in progress yields undef.
class BoundEngine {
  public:
    BoundEngine(const PrunedResetGraph& pruned, LocalBoundMap local_bounds, EngineOptions options);

    BoundExpr incr(const std::string& var);
    BoundExpr vb(const Atom& atom);
    BoundExpr tb(TransitionIndex t);
    BoundExpr tb(std::span<const TransitionIndex> ts);
    BoundExpr complexity();

    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }
    [[nodiscard]] const LocalBoundMap& local_bounds() const { return local_bounds_; }

  private:
    BoundExpr compute_tb(TransitionIndex t);
    BoundExpr compute_vb(const std::string& var);
    BoundExpr tb_free(const std::string& bound_var);
    BoundExpr tb_reset_paths(const std::string& bound_var);
    const std::optional<std::vector<ResetPath>>& paths_into(const std::string& var);
    BoundExpr incr_of(const Atom& atom);

    const Dcp& dcp_;
    const ResetGraph& graph_;
    std::set<std::string> removed_;
    LocalBoundMap local_bounds_;
    EngineOptions options_;

    std::map<TransitionIndex, BoundExpr> tb_memo_;
    std::map<std::string, BoundExpr> vb_memo_;
    std::set<TransitionIndex> tb_active_;
    std::set<std::string> vb_active_;
    std::map<std::string, std::optional<std::vector<ResetPath>>> path_cache_;
    std::vector<std::string> warnings_;
};

struct AnalysisOptions {
    AnalysisMode mode{AnalysisMode::Ctx};
    std::size_t max_cycles{default_cycle_cap};
    std::size_t max_reset_paths{default_reset_path_cap};
    bool memoize{true};
};

struct AnalysisResult {
    std::map<std::string, BoundExpr> transition_bounds; // by transition id
    std::map<std::string, BoundExpr> variable_bounds;   // by variable, including removed ones
    BoundExpr complexity;
    std::map<std::string, LocalBound> local_bounds; // by transition id
    std::set<std::string> removed_variables;
    std::vector<std::string> back_edges; // transition ids
    std::vector<std::string> warnings;
};

// Throws CycleCapExceeded when the cycle enumeration overflows.
AnalysisResult analyze(const Dcp& dcp, const AnalysisOptions& options = {});

} // namespace dcbound
