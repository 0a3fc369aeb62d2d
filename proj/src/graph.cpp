// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dcbound::graph {

namespace {

class Tarjan {
  public:
    Tarjan(std::size_t n, const std::vector<std::vector<std::size_t>>& adj)
        : adj_(adj), index_(n, unvisited), low_(n, 0), on_stack_(n, false) {}

    std::vector<std::vector<std::size_t>> run(const std::vector<bool>& active) {
        for (std::size_t v = 0; v < adj_.size(); ++v) {
            if (active[v] && index_[v] == unvisited) visit(v, active);
        }
        return std::move(components_);
    }

  private:
    static constexpr std::size_t unvisited = static_cast<std::size_t>(-1);

    void visit(std::size_t v, const std::vector<bool>& active) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        on_stack_[v] = true;
        for (auto w : adj_[v]) {
            if (!active[w]) continue;
            if (index_[w] == unvisited) {
                visit(w, active);
                low_[v] = std::min(low_[v], low_[w]);
            } else if (on_stack_[w]) {
                low_[v] = std::min(low_[v], index_[w]);
            }
        }
        if (low_[v] == index_[v]) {
            std::vector<std::size_t> comp;
            std::size_t w = 0;
            do {
                w = stack_.back();
                stack_.pop_back();
                on_stack_[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            components_.push_back(std::move(comp));
        }
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::vector<std::size_t> index_;
    std::vector<std::size_t> low_;
    std::vector<bool> on_stack_;
    std::vector<std::size_t> stack_;
    std::size_t counter_{0};
    std::vector<std::vector<std::size_t>> components_;
};

struct CapExceeded {};

} // namespace

std::vector<std::vector<std::size_t>> strongly_connected_components(std::size_t vertices,
                                                                    std::span<const Edge> edges) {
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    auto comps = Tarjan(vertices, adj).run(std::vector<bool>(vertices, true));
    std::sort(comps.begin(), comps.end());
    return comps;
}

// Johnson's algorithm on the simple vertex graph, followed by expansion of
// each vertex cycle over the parallel edges between consecutive vertices.
std::optional<std::vector<EdgePath>> simple_cycles(std::size_t vertices, std::span<const Edge> edges,
                                                   std::size_t cap) {
    std::vector<std::set<std::size_t>> succ(vertices);
    using EdgeLists = std::vector<std::vector<std::size_t>>;
    std::vector<EdgeLists> parallel(vertices, EdgeLists(vertices));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        succ[edges[e].from].insert(edges[e].to);
        parallel[edges[e].from][edges[e].to].push_back(e);
    }
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (std::size_t v = 0; v < vertices; ++v) adj[v].assign(succ[v].begin(), succ[v].end());

    std::vector<EdgePath> out;
    auto expand = [&](const std::vector<std::size_t>& cycle) {
        std::vector<EdgePath> partial{{}};
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const auto& options = parallel[cycle[i]][cycle[(i + 1) % cycle.size()]];
            std::vector<EdgePath> next;
            for (const auto& p : partial) {
                for (auto e : options) {
                    next.push_back(p);
                    next.back().push_back(e);
                }
            }
            partial = std::move(next);
            if (partial.size() + out.size() > cap) throw CapExceeded{};
        }
        for (auto& p : partial) out.push_back(std::move(p));
    };

    std::vector<bool> blocked(vertices, false);
    std::vector<std::set<std::size_t>> blocked_by(vertices);
    std::vector<bool> allowed(vertices, false);
    std::vector<std::size_t> path;
    std::size_t start = 0;

    std::function<void(std::size_t)> unblock = [&](std::size_t u) {
        blocked[u] = false;
        auto waiting = std::move(blocked_by[u]);
        blocked_by[u].clear();
        for (auto w : waiting) {
            if (blocked[w]) unblock(w);
        }
    };

    std::function<bool(std::size_t)> circuit = [&](std::size_t v) {
        bool found = false;
        path.push_back(v);
        blocked[v] = true;
        for (auto w : adj[v]) {
            if (!allowed[w]) continue;
            if (w == start) {
                expand(path);
                found = true;
            } else if (!blocked[w] && circuit(w)) {
                found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (auto w : adj[v]) {
                if (allowed[w]) blocked_by[w].insert(v);
            }
        }
        path.pop_back();
        return found;
    };

    try {
        for (start = 0; start < vertices; ++start) {
            std::vector<bool> active(vertices, false);
            for (auto v = start; v < vertices; ++v) active[v] = true;
            auto comps = Tarjan(vertices, adj).run(active);
            auto it = std::find_if(comps.begin(), comps.end(),
                                   [&](const auto& c) { return std::binary_search(c.begin(), c.end(), start); });
            const bool self_loop = succ[start].contains(start);
            if (it->size() == 1 && !self_loop) continue;
            std::fill(allowed.begin(), allowed.end(), false);
            for (auto v : *it) {
                allowed[v] = true;
                blocked[v] = false;
                blocked_by[v].clear();
            }
            circuit(start);
        }
    } catch (const CapExceeded&) {
        return std::nullopt;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dcbound::graph
