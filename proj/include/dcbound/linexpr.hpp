// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace dcbound {

// Integer linear expression: constant + sum of coefficient*variable.
class LinExpr {
  public:
    LinExpr() = default;
    static LinExpr constant(std::int64_t value);
    static LinExpr variable(const std::string& name, std::int64_t coef = 1);

    [[nodiscard]] std::int64_t constant_term() const { return constant_; }
    [[nodiscard]] const std::map<std::string, std::int64_t>& coefficients() const { return coefs_; }
    [[nodiscard]] std::int64_t coefficient(const std::string& var) const;
    [[nodiscard]] bool is_constant() const { return coefs_.empty(); }
    [[nodiscard]] std::set<std::string> variables() const;
    [[nodiscard]] LinExpr without_constant() const;

    LinExpr& operator+=(const LinExpr& other);
    LinExpr& operator-=(const LinExpr& other);
    [[nodiscard]] LinExpr scaled(std::int64_t k) const;

    // Simultaneous substitution; unmapped variables stay.
    [[nodiscard]] LinExpr substitute(const std::map<std::string, LinExpr>& with) const;

    // Throws std::out_of_range when a variable has no value.
    [[nodiscard]] std::int64_t evaluate(const std::map<std::string, std::int64_t>& state) const;

    // "i" for a bare variable, otherwise parenthesized such as "(l-i)".
    [[nodiscard]] std::string str() const;

    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend auto operator<=>(const LinExpr&, const LinExpr&) = default;

  private:
    std::int64_t constant_{0};
    std::map<std::string, std::int64_t> coefs_; // no zero entries
};

} // namespace dcbound
