// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcbound/diagnostics.hpp"

namespace dcbound {

// Right-hand side of a difference constraint.
struct Atom {
    enum class Kind { Var, Sym, Int };
    Kind kind{Kind::Int};
    std::string name;
    std::int64_t value{0};

    static Atom variable(std::string name) { return {Kind::Var, std::move(name), 0}; }
    static Atom symbolic(std::string name) { return {Kind::Sym, std::move(name), 0}; }
    static Atom integer(std::int64_t value) { return {Kind::Int, {}, value}; }

    [[nodiscard]] bool is_variable() const { return kind == Kind::Var; }
    [[nodiscard]] std::string str() const { return kind == Kind::Int ? std::to_string(value) : name; }

    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// lhs' <= rhs + offset
struct DifferenceConstraint {
    std::string lhs;
    Atom rhs;
    std::int64_t offset{0};

    friend bool operator==(const DifferenceConstraint&, const DifferenceConstraint&) = default;
};

using TransitionIndex = std::size_t;

struct Transition {
    std::string id;
    std::string source;
    std::string target;
    std::set<std::string> guard; // each variable must be > 0
    std::vector<DifferenceConstraint> updates;
    SourcePos pos;

    [[nodiscard]] const DifferenceConstraint* update_of(std::string_view var) const;
    [[nodiscard]] bool guards(const std::string& var) const { return guard.contains(var); }
};

struct Reset {
    TransitionIndex transition;
    Atom source;
    std::int64_t offset;
};

struct Increment {
    TransitionIndex transition;
    std::int64_t amount;
};

// Difference constraint program. Transitions are kept sorted by id and are
// addressed by their index in that order. Construction does not validate;
// see validate() and parse_dcp().
class Dcp {
  public:
    Dcp() = default;
    Dcp(std::vector<std::string> sym_consts, std::vector<std::string> variables, std::string entry,
        std::string exit, std::vector<Transition> transitions, std::vector<std::string> extra_locations = {});

    [[nodiscard]] const std::vector<std::string>& sym_consts() const { return sym_consts_; }
    [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<std::string>& locations() const { return locations_; }
    [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }
    [[nodiscard]] const Transition& transition(TransitionIndex t) const { return transitions_.at(t); }
    [[nodiscard]] const std::string& entry() const { return entry_; }
    [[nodiscard]] const std::string& exit() const { return exit_; }

    [[nodiscard]] std::optional<TransitionIndex> find_transition(std::string_view id) const;
    [[nodiscard]] TransitionIndex transition_index(std::string_view id) const; // throws InputError
    [[nodiscard]] std::span<const TransitionIndex> outgoing(const std::string& loc) const;
    [[nodiscard]] std::span<const TransitionIndex> incoming(const std::string& loc) const;
    [[nodiscard]] bool is_variable(std::string_view name) const;
    [[nodiscard]] bool is_sym_const(std::string_view name) const;

    // Variables constrained on every incoming transition of loc.
    [[nodiscard]] const std::set<std::string>& defined_at(const std::string& loc) const;

    // Working copy without the given variables, their constraints and guards.
    [[nodiscard]] Dcp without_variables(const std::set<std::string>& removed) const;

  private:
    void index();

    std::vector<std::string> sym_consts_;
    std::vector<std::string> variables_;
    std::vector<std::string> locations_;
    std::string entry_;
    std::string exit_;
    std::vector<Transition> transitions_;
    std::map<std::string, std::vector<TransitionIndex>, std::less<>> outgoing_;
    std::map<std::string, std::vector<TransitionIndex>, std::less<>> incoming_;
    std::map<std::string, std::set<std::string>, std::less<>> defined_;
};

// Transitions that set var from a different atom. Throws InputError for an unknown variable.
std::vector<Reset> resets(const Dcp& dcp, std::string_view var);
// Self-updates of var with a positive offset. Throws InputError for an unknown variable.
std::vector<Increment> increments(const Dcp& dcp, std::string_view var);

// Transitions closing a cycle in a depth-first search from the entry that
// visits outgoing transitions in id order. Self-loops are included.
std::vector<TransitionIndex> back_edges(const Dcp& dcp);

// Backward liveness: v is live at l when some path from l reads v before
// reaching a location where v is defined.
std::map<std::string, std::set<std::string>> live_variables(const Dcp& dcp);

// Variables that are live but not defined somewhere; empty for well-defined programs.
std::set<std::string> undefined_live_variables(const Dcp& dcp);

// Semantic checks: unique ids, determinism, entry/exit shape, name clashes,
// and well-definedness of every live variable.
std::vector<Diagnostic> validate(const Dcp& dcp);

Parsed<Dcp> parse_dcp(std::string_view text);
Dcp parse_dcp_or_throw(std::string_view text); // throws ParseError

std::string to_text(const Dcp& dcp, std::span<const std::string> comments = {});

} // namespace dcbound
