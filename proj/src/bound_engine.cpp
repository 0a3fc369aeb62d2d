// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/bound_engine.hpp"

#include <algorithm>

namespace dcbound {

std::string to_string(AnalysisMode mode) {
    switch (mode) {
    case AnalysisMode::Free: return "free";
    case AnalysisMode::Ctx: return "ctx";
    case AnalysisMode::Opt: return "opt";
    }
    return {};
}

std::optional<AnalysisMode> parse_mode(std::string_view text) {
    if (text == "free") return AnalysisMode::Free;
    if (text == "ctx") return AnalysisMode::Ctx;
    if (text == "opt") return AnalysisMode::Opt;
    return std::nullopt;
}

BoundEngine::BoundEngine(const PrunedResetGraph& pruned, LocalBoundMap local_bounds, EngineOptions options)
    : dcp_(pruned.dcp), graph_(pruned.graph), removed_(pruned.removed), local_bounds_(std::move(local_bounds)),
      options_(options) {}

BoundExpr BoundEngine::incr(const std::string& var) {
    if (!dcp_.is_variable(var)) return BoundExpr::undefined();
    std::vector<BoundExpr> terms{BoundExpr::constant(0)};
    for (const auto& inc : increments(dcp_, var)) {
        terms.push_back(tb(inc.transition) * BoundExpr::constant(inc.amount));
    }
    return build(BoundOp::Add, std::move(terms));
}

BoundExpr BoundEngine::incr_of(const Atom& atom) {
    return atom.is_variable() ? incr(atom.name) : BoundExpr::constant(0);
}

BoundExpr BoundEngine::vb(const Atom& atom) {
    switch (atom.kind) {
    case Atom::Kind::Int: return BoundExpr::constant(atom.value);
    case Atom::Kind::Sym: return BoundExpr::symbol(atom.name);
    case Atom::Kind::Var: break;
    }
    const auto& var = atom.name;
    if (options_.memoize) {
        if (auto it = vb_memo_.find(var); it != vb_memo_.end()) return it->second;
    }
    if (vb_active_.contains(var)) return BoundExpr::undefined();
    vb_active_.insert(var);
    auto result = compute_vb(var);
    vb_active_.erase(var);
    if (options_.memoize) vb_memo_.emplace(var, result);
    return result;
}

BoundExpr BoundEngine::compute_vb(const std::string& var) {
    if (!dcp_.is_variable(var)) return BoundExpr::undefined();
    const auto rs = resets(dcp_, var);
    if (rs.empty()) return BoundExpr::undefined();
    std::vector<BoundExpr> candidates;
    for (const auto& r : rs) candidates.push_back(vb(r.source) + BoundExpr::constant(r.offset));
    return incr(var) + build(BoundOp::Max, std::move(candidates));
}

BoundExpr BoundEngine::tb(TransitionIndex t) {
    if (options_.memoize) {
        if (auto it = tb_memo_.find(t); it != tb_memo_.end()) return it->second;
    }
    if (tb_active_.contains(t)) return BoundExpr::undefined();
    tb_active_.insert(t);
    auto result = compute_tb(t);
    tb_active_.erase(t);
    if (options_.memoize) tb_memo_.emplace(t, result);
    return result;
}

BoundExpr BoundEngine::tb(std::span<const TransitionIndex> ts) {
    std::vector<BoundExpr> known;
    std::optional<std::int64_t> smallest_constant;
    for (auto t : ts) {
        auto b = tb(t);
        if (b.is_undefined()) continue;
        if (b.is_constant()) {
            smallest_constant = smallest_constant ? std::min(*smallest_constant, b.value()) : b.value();
        }
        known.push_back(std::move(b));
    }
    // Any member bounds the whole set. A constant member is preferred over a min with symbolic terms.
    if (smallest_constant) return BoundExpr::constant(*smallest_constant);
    if (known.empty()) return BoundExpr::undefined();
    return build(BoundOp::Min, std::move(known));
}

BoundExpr BoundEngine::compute_tb(TransitionIndex t) {
    const auto& zeta = local_bounds_.at(t);
    switch (zeta.kind) {
    case LocalBound::Kind::One: return BoundExpr::constant(1);
    case LocalBound::Kind::None: return BoundExpr::undefined();
    case LocalBound::Kind::Variable: break;
    }
    if (options_.mode == AnalysisMode::Free) return tb_free(zeta.variable);
    return tb_reset_paths(zeta.variable);
}

BoundExpr BoundEngine::tb_free(const std::string& bound_var) {
    const auto rs = resets(dcp_, bound_var);
    if (rs.empty()) return BoundExpr::undefined();
    std::vector<BoundExpr> terms{incr(bound_var)};
    for (const auto& r : rs) {
        const auto reset_value = max_of(vb(r.source) + BoundExpr::constant(r.offset), BoundExpr::constant(0));
        terms.push_back(tb(r.transition) * reset_value);
    }
    return build(BoundOp::Add, std::move(terms));
}

const std::optional<std::vector<ResetPath>>& BoundEngine::paths_into(const std::string& var) {
    auto it = path_cache_.find(var);
    if (it == path_cache_.end()) {
        it = path_cache_.emplace(var, optimal_reset_paths(dcp_, graph_, var, options_.max_reset_paths)).first;
        if (!it->second) {
            warnings_.push_back("more than " + std::to_string(options_.max_reset_paths) +
                                " optimal reset paths into '" + var + "'; its bounds are undef");
        }
    }
    return it->second;
}

BoundExpr BoundEngine::tb_reset_paths(const std::string& bound_var) {
    const auto& paths = paths_into(bound_var);
    if (!paths || paths->empty()) return BoundExpr::undefined();

    std::vector<BoundExpr> terms;
    std::set<Atom> single_path_atoms;
    for (const auto& path : *paths) {
        const auto trn = path.transitions();
        const auto reset_value =
            max_of(vb(path.in()) + BoundExpr::constant(path.offset_sum()), BoundExpr::constant(0));
        terms.push_back(tb(trn) * reset_value);
        for (const auto& a : path.atoms()) {
            if (options_.mode == AnalysisMode::Ctx || graph_.count_paths(a, path.target()) > 1) {
                terms.push_back(incr_of(a));
            } else {
                single_path_atoms.insert(a);
            }
        }
    }
    for (const auto& a : single_path_atoms) terms.push_back(incr_of(a));
    return build(BoundOp::Add, std::move(terms));
}

BoundExpr BoundEngine::complexity() {
    std::vector<BoundExpr> terms{BoundExpr::constant(0)};
    for (auto t : back_edges(dcp_)) terms.push_back(tb(t));
    return build(BoundOp::Add, std::move(terms));
}

AnalysisResult analyze(const Dcp& dcp, const AnalysisOptions& options) {
    const auto pruned = build_reset_graph(dcp);
    const auto cycles = simple_cycles(pruned.dcp, options.max_cycles);
    BoundEngine engine(pruned, local_bound_map(pruned.dcp, cycles),
                       EngineOptions{options.mode, options.max_reset_paths, options.memoize});

    AnalysisResult out;
    out.removed_variables = pruned.removed;
    for (TransitionIndex t = 0; t < pruned.dcp.transitions().size(); ++t) {
        const auto& id = pruned.dcp.transition(t).id;
        out.transition_bounds.emplace(id, engine.tb(t));
        out.local_bounds.emplace(id, engine.local_bounds().at(t));
    }
    for (const auto& v : dcp.variables()) out.variable_bounds.emplace(v, engine.vb(Atom::variable(v)));
    out.complexity = engine.complexity();
    for (auto t : back_edges(pruned.dcp)) out.back_edges.push_back(pruned.dcp.transition(t).id);
    for (const auto& v : pruned.removed) {
        out.warnings.push_back("variable '" + v + "' lies on or depends on a reset cycle and was removed");
    }
    for (const auto& w : engine.warnings()) out.warnings.push_back(w);
    return out;
}

} // namespace dcbound
