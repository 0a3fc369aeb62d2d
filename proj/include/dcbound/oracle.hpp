// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcbound/bound_expr.hpp"
#include "dcbound/dcp.hpp"
#include "dcbound/report.hpp"

namespace dcbound {

inline constexpr std::int64_t unbounded_count = std::numeric_limits<std::int64_t>::max();
inline constexpr std::size_t default_step_cap = 100000;

// Exhaustive exploration under maximal updates: every constraint x' <= a + c
// sets x to exactly a + c and unconstrained variables become undefined.
struct Exploration {
    std::vector<std::int64_t> max_count; // per transition index, over all run prefixes
    std::map<std::string, std::optional<std::int64_t>> max_value; // where statically defined
    bool exhausted{true}; // false when the state cap cut the search short
    std::size_t states{0};

    friend bool operator==(const Exploration&, const Exploration&) = default;
};

// Throws InputError when a symbolic constant has no value and std::logic_error
// when a run reads an undefined variable.
Exploration explore(const Dcp& dcp, const Valuation& valuation, std::size_t step_cap = default_step_cap);

// One exploration per valuation, in input order.
std::vector<Exploration> explore_all_serial(const Dcp& dcp, std::span<const Valuation> valuations,
                                            std::size_t step_cap = default_step_cap);
std::vector<Exploration> explore_all_parallel(const Dcp& dcp, std::span<const Valuation> valuations,
                                              std::size_t step_cap = default_step_cap);

// Cartesian product of [lo, hi] over the given constants, lexicographic.
std::vector<Valuation> valuation_grid(std::span<const std::string> consts, std::int64_t lo, std::int64_t hi);

enum class Verdict { Pass, PassPartial, Fail };
std::string to_string(Verdict v);

struct CheckRow {
    enum class Status { Ok, Violation, Skip };
    std::string item; // transition id, or VB(var)
    std::optional<std::int64_t> observed; // nullopt: never defined; unbounded_count: unbounded
    std::optional<std::int64_t> bound;    // nullopt: undef
    Status status{Status::Ok};

    [[nodiscard]] std::string str() const;
};

struct ValuationCheck {
    Valuation valuation;
    Exploration exploration;
    std::vector<CheckRow> rows;
};

struct SoundnessResult {
    Verdict verdict{Verdict::Pass};
    std::vector<ValuationCheck> checks;

    [[nodiscard]] std::size_t violations() const;
};

SoundnessResult check_soundness(const Dcp& dcp, const BoundReport& report, std::span<const Valuation> valuations,
                                std::size_t step_cap = default_step_cap, bool parallel = true);

std::string format_valuation(const Valuation& v);

} // namespace dcbound
