// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcbound/dcp.hpp"
#include "dcbound/linexpr.hpp"
#include "dcbound/local_bounds.hpp"
#include "dcbound/program.hpp"

namespace dcbound {

inline constexpr std::size_t default_abstraction_depth = 5;

// Norms read off guards that sit on a loop which moves one of their variables
// by a constant, in transition-id order. Throws CycleCapExceeded.
std::vector<LinExpr> guess_norms(const Program& prog, std::size_t cycle_cap = default_cycle_cap);

// Value of norm after the transition, expressed over the pre-state.
// nullopt when a variable of norm is havocked.
std::optional<LinExpr> symbolic_execute(const LinExpr& norm, const ProgramTransition& t);

// Whether the guard of t syntactically implies norm > 0.
bool infer_guard(const LinExpr& norm, const ProgramTransition& t);

struct AbstractionOptions {
    std::size_t depth_limit{default_abstraction_depth};
    std::size_t cycle_cap{default_cycle_cap};
    bool keep_names{false}; // name variables after their norms, e.g. (l-i)
};

struct NormVariable {
    std::string name; // variable in the abstract program
    LinExpr norm;
};

struct Abstraction {
    Dcp dcp;
    std::vector<NormVariable> norms;               // surviving norms in creation order
    std::map<std::string, LinExpr> fresh_constants; // symbolic constant -> parameter expression
    std::vector<std::string> discarded;             // printed norms
    std::vector<std::string> warnings;

    // "v1 = (l-i)" style lines describing the naming.
    [[nodiscard]] std::vector<std::string> comments() const;
};

Abstraction abstract_program(const Program& prog, const AbstractionOptions& options = {});

} // namespace dcbound
