// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/linexpr.hpp"

#include <stdexcept>
#include <vector>

namespace dcbound {

namespace {
std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("linear expression overflow");
    return r;
}
std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("linear expression overflow");
    return r;
}
} // namespace

LinExpr LinExpr::constant(std::int64_t value) {
    LinExpr e;
    e.constant_ = value;
    return e;
}

LinExpr LinExpr::variable(const std::string& name, std::int64_t coef) {
    LinExpr e;
    if (coef != 0) e.coefs_[name] = coef;
    return e;
}

std::int64_t LinExpr::coefficient(const std::string& var) const {
    auto it = coefs_.find(var);
    return it == coefs_.end() ? 0 : it->second;
}

std::set<std::string> LinExpr::variables() const {
    std::set<std::string> out;
    for (const auto& [v, c] : coefs_) out.insert(v);
    return out;
}

LinExpr LinExpr::without_constant() const {
    LinExpr e = *this;
    e.constant_ = 0;
    return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
    constant_ = add(constant_, other.constant_);
    for (const auto& [v, c] : other.coefs_) {
        auto& slot = coefs_[v];
        slot = add(slot, c);
        if (slot == 0) coefs_.erase(v);
    }
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) { return *this += other.scaled(-1); }

LinExpr LinExpr::scaled(std::int64_t k) const {
    LinExpr e;
    if (k == 0) return e;
    e.constant_ = mul(constant_, k);
    for (const auto& [v, c] : coefs_) e.coefs_[v] = mul(c, k);
    return e;
}

LinExpr LinExpr::substitute(const std::map<std::string, LinExpr>& with) const {
    LinExpr out = LinExpr::constant(constant_);
    for (const auto& [v, c] : coefs_) {
        auto it = with.find(v);
        out += it == with.end() ? LinExpr::variable(v, c) : it->second.scaled(c);
    }
    return out;
}

std::int64_t LinExpr::evaluate(const std::map<std::string, std::int64_t>& state) const {
    std::int64_t acc = constant_;
    for (const auto& [v, c] : coefs_) acc = add(acc, mul(c, state.at(v)));
    return acc;
}

std::string LinExpr::str() const {
    if (constant_ == 0 && coefs_.size() == 1 && coefs_.begin()->second == 1) return coefs_.begin()->first;
    std::vector<std::pair<std::string, std::int64_t>> terms;
    for (const auto& [v, c] : coefs_) {
        if (c > 0) terms.emplace_back(v, c);
    }
    for (const auto& [v, c] : coefs_) {
        if (c < 0) terms.emplace_back(v, c);
    }
    std::string out = "(";
    bool first = true;
    for (const auto& [v, c] : terms) {
        if (c < 0) {
            out += '-';
        } else if (!first) {
            out += '+';
        }
        const auto magnitude = c < 0 ? -c : c;
        if (magnitude != 1) out += std::to_string(magnitude) + "*";
        out += v;
        first = false;
    }
    if (constant_ != 0 || first) {
        if (constant_ >= 0 && !first) out += '+';
        out += std::to_string(constant_);
    }
    return out + ")";
}

} // namespace dcbound
