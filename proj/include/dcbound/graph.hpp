// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dcbound::graph {

// Directed multigraph edge between vertex indices.
struct Edge {
    std::size_t from;
    std::size_t to;
};

using EdgePath = std::vector<std::size_t>; // edge indices

// All simple cycles (no repeated vertex) as edge sequences starting at their
// smallest vertex. Parallel edges give distinct cycles. nullopt once more than
// `cap` cycles exist.
std::optional<std::vector<EdgePath>> simple_cycles(std::size_t vertices, std::span<const Edge> edges,
                                                   std::size_t cap);

// Strongly connected components, each sorted ascending.
std::vector<std::vector<std::size_t>> strongly_connected_components(std::size_t vertices,
                                                                    std::span<const Edge> edges);

// Vertices reachable from `from` (inclusive) using only edges for which keep(edge) holds.
template <typename Keep>
std::vector<bool> reachable(std::size_t vertices, std::span<const Edge> edges, std::size_t from, Keep keep) {
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (keep(e)) adj[edges[e].from].push_back(edges[e].to);
    }
    std::vector<bool> seen(vertices, false);
    std::vector<std::size_t> work{from};
    seen[from] = true;
    while (!work.empty()) {
        const auto v = work.back();
        work.pop_back();
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                work.push_back(w);
            }
        }
    }
    return seen;
}

} // namespace dcbound::graph
