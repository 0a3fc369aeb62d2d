// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace dcbound {

namespace {

// Undefined variables are stored as this sentinel; checked arithmetic never produces it.
constexpr std::int64_t undefined_value = std::numeric_limits<std::int64_t>::min();

using StateKey = std::vector<std::int64_t>; // location index, then one slot per variable

struct KeyHash {
    std::size_t operator()(const StateKey& k) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : k) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Compiled form of the program for fast stepping.
struct Machine {
    struct Update {
        std::size_t lhs;
        Atom::Kind kind;
        std::int64_t operand; // variable slot or constant value
        std::int64_t offset;
    };
    struct Step {
        std::size_t target;
        std::vector<std::size_t> guard;
        std::vector<Update> updates;
    };
    std::vector<std::vector<std::size_t>> outgoing; // per location: transition indices
    std::vector<Step> steps;                        // per transition
    std::vector<std::vector<std::size_t>> defined;  // per location: variable slots in its defined set
    std::size_t entry{0};
    std::size_t vars{0};

    Machine(const Dcp& dcp, const Valuation& valuation) : vars(dcp.variables().size()) {
        const auto& locs = dcp.locations();
        const auto& names = dcp.variables();
        auto loc_index = [&](const std::string& l) {
            return static_cast<std::size_t>(std::lower_bound(locs.begin(), locs.end(), l) - locs.begin());
        };
        auto var_index = [&](const std::string& v) {
            return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), v) - names.begin());
        };
        entry = loc_index(dcp.entry());
        outgoing.resize(locs.size());
        defined.resize(locs.size());
        for (std::size_t l = 0; l < locs.size(); ++l) {
            for (const auto& v : dcp.defined_at(locs[l])) defined[l].push_back(var_index(v));
        }
        for (TransitionIndex t = 0; t < dcp.transitions().size(); ++t) {
            const auto& tr = dcp.transition(t);
            outgoing[loc_index(tr.source)].push_back(t);
            Step step;
            step.target = loc_index(tr.target);
            for (const auto& g : tr.guard) step.guard.push_back(var_index(g));
            for (const auto& dc : tr.updates) {
                Update up{var_index(dc.lhs), dc.rhs.kind, 0, dc.offset};
                switch (dc.rhs.kind) {
                case Atom::Kind::Var: up.operand = static_cast<std::int64_t>(var_index(dc.rhs.name)); break;
                case Atom::Kind::Int: up.operand = dc.rhs.value; break;
                case Atom::Kind::Sym: {
                    auto it = valuation.find(dc.rhs.name);
                    if (it == valuation.end()) {
                        throw InputError("no value for symbolic constant '" + dc.rhs.name + "'");
                    }
                    up.kind = Atom::Kind::Int;
                    up.operand = it->second;
                    break;
                }
                }
                step.updates.push_back(up);
            }
            steps.push_back(std::move(step));
        }
    }

    std::optional<StateKey> fire(const StateKey& from, TransitionIndex t) const {
        const auto& step = steps[t];
        for (auto g : step.guard) {
            const auto v = from[1 + g];
            if (v == undefined_value) throw std::logic_error("guard reads an undefined variable");
            if (v <= 0) return std::nullopt;
        }
        StateKey to(from.size(), undefined_value);
        to[0] = static_cast<std::int64_t>(step.target);
        for (const auto& up : step.updates) {
            std::int64_t base = up.operand;
            if (up.kind == Atom::Kind::Var) {
                base = from[1 + static_cast<std::size_t>(up.operand)];
                if (base == undefined_value) throw std::logic_error("update reads an undefined variable");
            }
            std::int64_t value{};
            if (__builtin_add_overflow(base, up.offset, &value) || value == undefined_value) {
                throw std::overflow_error("variable value overflow during exploration");
            }
            to[1 + up.lhs] = value;
        }
        return to;
    }
};

} // namespace

Exploration explore(const Dcp& dcp, const Valuation& valuation, std::size_t step_cap) {
    const Machine m(dcp, valuation);
    const std::size_t n_trans = dcp.transitions().size();
    Exploration out;

    // Reachable state graph.
    struct Edge {
        TransitionIndex via;
        std::size_t to;
    };
    std::vector<StateKey> keys;
    std::vector<std::vector<Edge>> succ;
    std::unordered_map<StateKey, std::size_t, KeyHash> ids;
    auto intern = [&](StateKey key) -> std::optional<std::size_t> {
        if (auto it = ids.find(key); it != ids.end()) return it->second;
        if (keys.size() >= step_cap) return std::nullopt;
        ids.emplace(key, keys.size());
        keys.push_back(std::move(key));
        succ.emplace_back();
        return keys.size() - 1;
    };
    StateKey init(1 + m.vars, undefined_value);
    init[0] = static_cast<std::int64_t>(m.entry);
    intern(std::move(init));
    for (std::size_t s = 0; s < keys.size(); ++s) {
        const auto loc = static_cast<std::size_t>(keys[s][0]);
        for (auto t : m.outgoing[loc]) {
            auto next = m.fire(keys[s], t);
            if (!next) continue;
            auto id = intern(std::move(*next));
            if (!id) {
                out.exhausted = false;
                continue;
            }
            succ[s].push_back({t, *id});
        }
    }
    const std::size_t n = keys.size();

    // Iterative Tarjan; components come out sinks first.
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> tarjan_stack;
    std::vector<std::vector<std::size_t>> comps;
    std::size_t counter = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        tarjan_stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < succ[v].size()) {
                const auto w = succ[v][i++].to;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    tarjan_stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const auto done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::vector<std::size_t> members;
                std::size_t w = 0;
                do {
                    w = tarjan_stack.back();
                    tarjan_stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = comps.size();
                    members.push_back(w);
                } while (w != done);
                comps.push_back(std::move(members));
            }
        }
    }

    // Longest-count DP over the condensation. A transition inside a component
    // lies on a state loop and can fire unboundedly often.
    std::vector<bool> loops(n_trans, false);
    std::vector<std::vector<std::int64_t>> best(comps.size(), std::vector<std::int64_t>(n_trans, 0));
    std::vector<std::vector<std::int64_t>> vmax(comps.size(), std::vector<std::int64_t>(m.vars, undefined_value));
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (auto s : comps[c]) {
            const auto loc = static_cast<std::size_t>(keys[s][0]);
            for (auto v : m.defined[loc]) vmax[c][v] = std::max(vmax[c][v], keys[s][1 + v]);
            for (const auto& e : succ[s]) {
                const auto d = comp[e.to];
                if (d == c) {
                    loops[e.via] = true;
                    continue;
                }
                for (std::size_t k = 0; k < n_trans; ++k) {
                    best[c][k] = std::max(best[c][k], best[d][k] + (k == e.via ? 1 : 0));
                }
                for (std::size_t v = 0; v < m.vars; ++v) vmax[c][v] = std::max(vmax[c][v], vmax[d][v]);
            }
        }
    }

    const auto root = comp[0];
    out.max_count = best[root];
    for (std::size_t k = 0; k < n_trans; ++k) {
        if (loops[k]) out.max_count[k] = unbounded_count;
    }
    for (std::size_t v = 0; v < m.vars; ++v) {
        const auto x = vmax[root][v];
        out.max_value[dcp.variables()[v]] = x == undefined_value ? std::nullopt : std::optional<std::int64_t>(x);
    }
    out.states = n;
    return out;
}

} // namespace dcbound
