// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcbound/diagnostics.hpp"
#include "dcbound/linexpr.hpp"

namespace dcbound {

enum class RelOp { Lt, Le, Gt, Ge, Eq };

struct Comparison {
    LinExpr lhs;
    RelOp op{RelOp::Lt};
    LinExpr rhs;

    // An expression that is positive exactly when the comparison holds
    // (a > b gives a-b, a >= b gives a-b+1). nullopt for equalities.
    [[nodiscard]] std::optional<LinExpr> positive_form() const;
    [[nodiscard]] bool holds(const std::map<std::string, std::int64_t>& state) const;
};

// var := value, or var := ? when value is empty.
struct Assignment {
    std::string var;
    std::optional<LinExpr> value;
};

struct ProgramTransition {
    std::string id;
    std::string source;
    std::string target;
    std::vector<Comparison> guard;
    std::vector<Assignment> updates; // simultaneous
    SourcePos pos;

    [[nodiscard]] const Assignment* assignment_of(const std::string& var) const;
};

// Integer program over parameters and variables; the input of abstraction.
class Program {
  public:
    Program() = default;
    Program(std::vector<std::string> params, std::vector<std::string> variables, std::string entry,
            std::string exit, std::vector<ProgramTransition> transitions);

    [[nodiscard]] const std::vector<std::string>& params() const { return params_; }
    [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<std::string>& locations() const { return locations_; }
    [[nodiscard]] const std::vector<ProgramTransition>& transitions() const { return transitions_; }
    [[nodiscard]] const std::string& entry() const { return entry_; }
    [[nodiscard]] const std::string& exit() const { return exit_; }
    [[nodiscard]] bool is_param(const std::string& name) const;
    [[nodiscard]] std::span<const std::size_t> incoming(const std::string& loc) const;

    // Variables assigned on every path from the entry to loc.
    [[nodiscard]] const std::set<std::string>& must_defined_at(const std::string& loc) const;

  private:
    void index();

    std::vector<std::string> params_;
    std::vector<std::string> variables_;
    std::vector<std::string> locations_;
    std::string entry_;
    std::string exit_;
    std::vector<ProgramTransition> transitions_;
    std::map<std::string, std::vector<std::size_t>> incoming_;
    std::map<std::string, std::set<std::string>> must_defined_;
};

Parsed<Program> parse_program(std::string_view text);
Program parse_program_or_throw(std::string_view text); // throws ParseError

} // namespace dcbound
