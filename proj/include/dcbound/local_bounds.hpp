// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dcbound/dcp.hpp"

namespace dcbound {

inline constexpr std::size_t default_cycle_cap = 10000;

// Transitions of a simple cycle of the control-flow graph, in traversal order.
struct SimpleCycle {
    std::vector<TransitionIndex> transitions;

    friend auto operator<=>(const SimpleCycle&, const SimpleCycle&) = default;
};

struct CycleCapExceeded : std::runtime_error {
    explicit CycleCapExceeded(std::size_t limit)
        : std::runtime_error("more than " + std::to_string(limit) + " simple cycles"), cap(limit) {}
    std::size_t cap;
};

// Throws CycleCapExceeded when more than `cap` cycles exist.
std::vector<SimpleCycle> simple_cycles(const Dcp& dcp, std::size_t cap = default_cycle_cap);

struct LocalBound {
    enum class Kind { One, Variable, None };
    Kind kind{Kind::None};
    std::string variable;

    static LocalBound one() { return {Kind::One, {}}; }
    static LocalBound of(std::string v) { return {Kind::Variable, std::move(v)}; }
    static LocalBound none() { return {Kind::None, {}}; }

    [[nodiscard]] std::string str() const {
        switch (kind) {
        case Kind::One: return "1";
        case Kind::Variable: return variable;
        case Kind::None: return "none";
        }
        return {};
    }
    friend bool operator==(const LocalBound&, const LocalBound&) = default;
};

// One entry per transition index.
using LocalBoundMap = std::vector<LocalBound>;

LocalBoundMap local_bound_map(const Dcp& dcp, std::span<const SimpleCycle> cycles);
LocalBoundMap local_bound_map(const Dcp& dcp, std::size_t cycle_cap = default_cycle_cap);

} // namespace dcbound
