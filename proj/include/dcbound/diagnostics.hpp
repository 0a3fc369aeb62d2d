// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcbound/bound_expr.hpp"

namespace dcbound {

struct SourcePos {
    int line{0};
    int column{0};
};

struct Diagnostic {
    SourcePos pos;
    std::string message;

    [[nodiscard]] std::string str() const {
        return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
    }
};

// Either a value or the diagnostics explaining why there is none.
template <typename T>
struct Parsed {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    explicit operator bool() const { return value.has_value(); }
};

struct ParseError : InputError {
    explicit ParseError(std::vector<Diagnostic> diags)
        : InputError(render(diags)), diagnostics(std::move(diags)) {}

    std::vector<Diagnostic> diagnostics;

  private:
    static std::string render(const std::vector<Diagnostic>& diags) {
        std::string out;
        for (const auto& d : diags) {
            if (!out.empty()) out += '\n';
            out += d.str();
        }
        return out;
    }
};

} // namespace dcbound
