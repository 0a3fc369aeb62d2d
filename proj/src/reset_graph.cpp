// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/reset_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "dcbound/graph.hpp"

namespace dcbound {

ResetGraph::ResetGraph(const Dcp& dcp) : variables_(dcp.variables()) {
    for (const auto& v : dcp.variables()) {
        for (const auto& r : resets(dcp, v)) edges_.push_back({r.source, r.transition, r.offset, v});
    }
    std::stable_sort(edges_.begin(), edges_.end(), [](const ResetEdge& a, const ResetEdge& b) {
        return std::tie(a.transition, a.target) < std::tie(b.transition, b.target);
    });
}

std::vector<ResetEdge> ResetGraph::edges_into(const std::string& var) const {
    std::vector<ResetEdge> out;
    for (const auto& e : edges_) {
        if (e.target == var) out.push_back(e);
    }
    return out;
}

int ResetGraph::count_paths(const Atom& from, const std::string& to, int saturate) const {
    std::map<Atom, int> memo;
    std::function<int(const Atom&)> count = [&](const Atom& a) -> int {
        if (auto it = memo.find(a); it != memo.end()) return it->second;
        memo[a] = 0; // guards against cycles; callers pass acyclic graphs
        int n = (a.is_variable() && a.name == to) ? 1 : 0;
        if (!(a.is_variable() && a.name == to)) {
            for (const auto& e : edges_) {
                if (e.source == a) n = std::min(saturate, n + count(Atom::variable(e.target)));
            }
        }
        memo[a] = std::min(n, saturate);
        return memo[a];
    };
    return count(from);
}

std::string ResetGraph::to_dot(const Dcp& dcp) const {
    std::ostringstream os;
    os << "digraph reset_graph {\n";
    for (const auto& v : variables_) os << "  \"" << v << "\";\n";
    for (const auto& e : edges_) {
        os << "  \"" << e.source.str() << "\" -> \"" << e.target << "\" [label=\"" << dcp.transition(e.transition).id;
        if (e.offset > 0) os << ",+" << e.offset;
        if (e.offset < 0) os << "," << e.offset;
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

PrunedResetGraph build_reset_graph(const Dcp& dcp) {
    const auto& vars = dcp.variables();
    auto index_of = [&](const std::string& v) {
        return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    };
    const ResetGraph full(dcp);
    std::vector<graph::Edge> var_edges;
    for (const auto& e : full.edges()) {
        if (e.source.is_variable()) var_edges.push_back({index_of(e.source.name), index_of(e.target)});
    }
    std::vector<bool> removed(vars.size(), false);
    for (const auto& comp : graph::strongly_connected_components(vars.size(), var_edges)) {
        if (comp.size() < 2) continue;
        for (auto v : comp) {
            if (removed[v]) continue;
            const auto reach = graph::reachable(vars.size(), var_edges, v, [](std::size_t) { return true; });
            for (std::size_t w = 0; w < vars.size(); ++w) {
                if (reach[w]) removed[w] = true;
            }
        }
    }
    PrunedResetGraph out;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (removed[v]) out.removed.insert(vars[v]);
    }
    out.dcp = out.removed.empty() ? dcp : dcp.without_variables(out.removed);
    out.graph = ResetGraph(out.dcp);
    return out;
}

std::int64_t ResetPath::offset_sum() const {
    std::int64_t sum = 0;
    for (const auto& e : edges) {
        if (__builtin_add_overflow(sum, e.offset, &sum)) throw std::overflow_error("reset path offset overflow");
    }
    return sum;
}

std::vector<TransitionIndex> ResetPath::transitions() const {
    std::vector<TransitionIndex> out;
    for (const auto& e : edges) out.push_back(e.transition);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Atom> ResetPath::atoms() const {
    std::vector<Atom> out{Atom::variable(target())};
    for (const auto& e : edges) out.push_back(e.source);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string ResetPath::str(const Dcp& dcp) const {
    std::string out = in().str();
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
        out += " --" + dcp.transition(it->transition).id;
        if (it->offset > 0) out += ",+" + std::to_string(it->offset);
        if (it->offset < 0) out += "," + std::to_string(it->offset);
        out += "--> " + it->target;
    }
    return out;
}

bool is_sound(const Dcp& dcp, const ResetPath& path) {
    const auto& locs = dcp.locations();
    auto loc_index = [&](const std::string& l) {
        return static_cast<std::size_t>(std::lower_bound(locs.begin(), locs.end(), l) - locs.begin());
    };
    std::vector<graph::Edge> cfg;
    for (const auto& t : dcp.transitions()) cfg.push_back({loc_index(t.source), loc_index(t.target)});

    const auto& first = dcp.transition(path.edges.front().transition);
    for (std::size_t i = 1; i < path.edges.size(); ++i) {
        // a_i is the source atom of the i-th edge and the target of the (i+1)-th.
        const std::string& interior = path.edges[i].target;
        const auto& reading = dcp.transition(path.edges[i - 1].transition);
        const auto reach = graph::reachable(locs.size(), cfg, loc_index(first.target), [&](std::size_t t) {
            const auto* dc = dcp.transition(t).update_of(interior);
            const bool resets_it = dc && !(dc->rhs.is_variable() && dc->rhs.name == interior);
            return !resets_it;
        });
        if (reach[loc_index(reading.source)]) return false;
    }
    return true;
}

std::optional<std::vector<ResetPath>> optimal_reset_paths(const Dcp& dcp, const ResetGraph& graph,
                                                          const std::string& var, std::size_t cap) {
    struct CapExceeded {};
    std::vector<ResetPath> out;
    std::function<void(ResetPath&)> extend = [&](ResetPath& path) {
        bool extended = false;
        if (path.in().is_variable()) {
            for (const auto& e : graph.edges_into(path.in().name)) {
                path.edges.push_back(e);
                if (is_sound(dcp, path)) {
                    extended = true;
                    extend(path);
                }
                path.edges.pop_back();
            }
        }
        if (!extended) {
            if (out.size() == cap) throw CapExceeded{};
            out.push_back(path);
        }
    };
    try {
        for (const auto& e : graph.edges_into(var)) {
            ResetPath path{{e}};
            extend(path);
        }
    } catch (const CapExceeded&) {
        return std::nullopt;
    }
    return out;
}

} // namespace dcbound
