// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/local_bounds.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dcbound/graph.hpp"

namespace dcbound {

std::vector<SimpleCycle> simple_cycles(const Dcp& dcp, std::size_t cap) {
    const auto& locs = dcp.locations();
    auto loc_index = [&](const std::string& l) {
        return static_cast<std::size_t>(std::lower_bound(locs.begin(), locs.end(), l) - locs.begin());
    };
    std::vector<graph::Edge> edges;
    for (const auto& t : dcp.transitions()) edges.push_back({loc_index(t.source), loc_index(t.target)});
    auto cycles = graph::simple_cycles(locs.size(), edges, cap);
    if (!cycles) throw CycleCapExceeded(cap);
    std::vector<SimpleCycle> out;
    out.reserve(cycles->size());
    // Edge indices coincide with transition indices.
    for (auto& c : *cycles) out.push_back({std::move(c)});
    return out;
}

namespace {

// Variables that are both guarded and decreased somewhere on the cycle.
std::set<std::string> decreasing_guarded(const Dcp& dcp, const SimpleCycle& cycle) {
    std::set<std::string> guarded;
    std::set<std::string> decreased;
    for (auto t : cycle.transitions) {
        const auto& tr = dcp.transition(t);
        guarded.insert(tr.guard.begin(), tr.guard.end());
        for (const auto& dc : tr.updates) {
            if (dc.rhs.is_variable() && dc.rhs.name == dc.lhs && dc.offset < 0) decreased.insert(dc.lhs);
        }
    }
    std::set<std::string> both;
    std::set_intersection(guarded.begin(), guarded.end(), decreased.begin(), decreased.end(),
                          std::inserter(both, both.end()));
    return both;
}

} // namespace

LocalBoundMap local_bound_map(const Dcp& dcp, std::span<const SimpleCycle> cycles) {
    std::map<TransitionIndex, std::set<std::string>> candidates;
    for (const auto& c : cycles) {
        const auto vars = decreasing_guarded(dcp, c);
        for (auto t : c.transitions) {
            auto [it, fresh] = candidates.try_emplace(t, vars);
            if (!fresh) {
                std::set<std::string> keep;
                std::set_intersection(it->second.begin(), it->second.end(), vars.begin(), vars.end(),
                                      std::inserter(keep, keep.end()));
                it->second = std::move(keep);
            }
        }
    }
    LocalBoundMap out(dcp.transitions().size(), LocalBound::one());
    for (const auto& [t, vars] : candidates) {
        out[t] = vars.empty() ? LocalBound::none() : LocalBound::of(*vars.begin());
    }
    return out;
}

LocalBoundMap local_bound_map(const Dcp& dcp, std::size_t cycle_cap) {
    const auto cycles = simple_cycles(dcp, cycle_cap);
    return local_bound_map(dcp, cycles);
}

} // namespace dcbound
