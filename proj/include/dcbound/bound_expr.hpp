// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcbound {

// Assignment of nonnegative integers to symbolic constants.
using Valuation = std::map<std::string, std::int64_t>;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbolic bound over symbolic constants. The undefined bound absorbs every
// operator. Values produced by the builders below are always normalized; the
// raw() factory exists so tests can feed arbitrary trees to normalize().
class BoundExpr {
  public:
    enum class Kind { Int, Sym, Sum, Product, Max, Min, Undef };

    BoundExpr(); // integer zero

    static BoundExpr constant(std::int64_t value);
    static BoundExpr symbol(std::string name);
    static BoundExpr undefined();
    static BoundExpr raw(Kind kind, std::vector<BoundExpr> args);

    [[nodiscard]] Kind kind() const { return node_->kind; }
    [[nodiscard]] bool is_undefined() const { return kind() == Kind::Undef; }
    [[nodiscard]] bool is_constant() const { return kind() == Kind::Int; }
    [[nodiscard]] std::int64_t value() const { return node_->value; }
    [[nodiscard]] const std::string& name() const { return node_->name; }
    [[nodiscard]] std::span<const BoundExpr> args() const { return node_->args; }

    // Printed form; canonical for normalized expressions.
    [[nodiscard]] const std::string& str() const { return node_->text; }

    friend bool operator==(const BoundExpr& a, const BoundExpr& b);

  private:
    struct Node {
        Kind kind{Kind::Int};
        std::int64_t value{0};
        std::string name;
        std::vector<BoundExpr> args;
        std::string text;
    };
    explicit BoundExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static BoundExpr make(Node node);

    std::shared_ptr<const Node> node_;
};

enum class BoundOp { Add, Mul, Max, Min };

// Normalized n-ary construction. Throws InputError on an empty argument list.
BoundExpr build(BoundOp op, std::vector<BoundExpr> args);
BoundExpr normalize(const BoundExpr& e);

BoundExpr operator+(const BoundExpr& a, const BoundExpr& b);
BoundExpr operator*(const BoundExpr& a, const BoundExpr& b);
BoundExpr max_of(const BoundExpr& a, const BoundExpr& b);
BoundExpr min_of(const BoundExpr& a, const BoundExpr& b);

// nullopt for undef. Throws InputError when a symbol has no value and
// std::overflow_error when int64 arithmetic overflows.
std::optional<std::int64_t> evaluate(const BoundExpr& e, const Valuation& valuation);

// Sufficient syntactic test for e >= 0 under every nonnegative valuation.
bool provably_nonnegative(const BoundExpr& e);

std::set<std::string> symbols(const BoundExpr& e);

// Parses the printed form; the result is normalized. Throws InputError.
BoundExpr parse_bound_expr(std::string_view text);

} // namespace dcbound
