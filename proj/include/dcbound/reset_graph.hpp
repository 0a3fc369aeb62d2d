// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcbound/dcp.hpp"

namespace dcbound {

inline constexpr std::size_t default_reset_path_cap = 4096;

// source --transition, offset--> target
struct ResetEdge {
    Atom source;
    TransitionIndex transition{};
    std::int64_t offset{0};
    std::string target;

    friend bool operator==(const ResetEdge&, const ResetEdge&) = default;
};

class ResetGraph {
  public:
    ResetGraph() = default;
    explicit ResetGraph(const Dcp& dcp);

    [[nodiscard]] const std::vector<ResetEdge>& edges() const { return edges_; }
    [[nodiscard]] std::vector<ResetEdge> edges_into(const std::string& var) const;

    // Number of distinct paths from `from` to `to`, saturating at `saturate`.
    // The empty path counts when from is the variable `to` itself.
    [[nodiscard]] int count_paths(const Atom& from, const std::string& to, int saturate = 2) const;

    [[nodiscard]] std::string to_dot(const Dcp& dcp) const;

  private:
    std::vector<ResetEdge> edges_;
    std::vector<std::string> variables_;
};

// Reset graph of a working copy of the program from which variables on
// reset cycles, and everything they flow into, have been removed.
struct PrunedResetGraph {
    Dcp dcp;
    ResetGraph graph;
    std::set<std::string> removed;
};

PrunedResetGraph build_reset_graph(const Dcp& dcp);

// A chain of resets ending in a variable. edges.front() enters the target,
// edges.back() leaves the input atom.
struct ResetPath {
    std::vector<ResetEdge> edges;

    [[nodiscard]] const std::string& target() const { return edges.front().target; }
    [[nodiscard]] const Atom& in() const { return edges.back().source; }
    [[nodiscard]] std::int64_t offset_sum() const;
    [[nodiscard]] std::vector<TransitionIndex> transitions() const; // sorted, unique
    [[nodiscard]] std::vector<Atom> atoms() const;                  // includes target and in(), sorted
    [[nodiscard]] std::string str(const Dcp& dcp) const;

    friend bool operator==(const ResetPath&, const ResetPath&) = default;
};

// Whether each interior variable of the path is reset on every path from the
// target of its last transition back to the source of the transition reading it.
bool is_sound(const Dcp& dcp, const ResetPath& path);

// Maximal sound paths ending at var; nullopt when more than `cap` exist.
std::optional<std::vector<ResetPath>> optimal_reset_paths(const Dcp& dcp, const ResetGraph& graph,
                                                          const std::string& var,
                                                          std::size_t cap = default_reset_path_cap);

} // namespace dcbound
