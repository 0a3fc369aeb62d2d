// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/bound_expr.hpp"

#include <algorithm>
#include <cctype>

namespace dcbound {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in bound arithmetic");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in bound arithmetic");
    }
    return r;
}

std::string join(std::span<const BoundExpr> args, std::string_view sep, bool paren_sums) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += sep;
        const bool wrap = paren_sums && args[i].kind() == BoundExpr::Kind::Sum;
        if (wrap) out += '(';
        out += args[i].str();
        if (wrap) out += ')';
    }
    return out;
}

bool by_text(const BoundExpr& a, const BoundExpr& b) { return a.str() < b.str(); }

} // namespace

BoundExpr::BoundExpr() : BoundExpr(constant(0)) {}

BoundExpr BoundExpr::make(Node node) {
    switch (node.kind) {
    case Kind::Int: node.text = std::to_string(node.value); break;
    case Kind::Sym: node.text = node.name; break;
    case Kind::Undef: node.text = "undef"; break;
    case Kind::Sum: node.text = join(node.args, " + ", false); break;
    case Kind::Product: node.text = join(node.args, "*", true); break;
    case Kind::Max: node.text = "max(" + join(node.args, ",", false) + ")"; break;
    case Kind::Min: node.text = "min(" + join(node.args, ",", false) + ")"; break;
    }
    return BoundExpr(std::make_shared<const Node>(std::move(node)));
}

BoundExpr BoundExpr::constant(std::int64_t value) {
    Node n;
    n.kind = Kind::Int;
    n.value = value;
    return make(std::move(n));
}

BoundExpr BoundExpr::symbol(std::string name) {
    Node n;
    n.kind = Kind::Sym;
    n.name = std::move(name);
    return make(std::move(n));
}

BoundExpr BoundExpr::undefined() {
    static const BoundExpr undef = [] {
        Node n;
        n.kind = Kind::Undef;
        return make(std::move(n));
    }();
    return undef;
}

BoundExpr BoundExpr::raw(Kind kind, std::vector<BoundExpr> args) {
    if (kind == Kind::Int || kind == Kind::Sym || kind == Kind::Undef) {
        throw InputError("raw() only builds operator nodes");
    }
    if (args.empty()) throw InputError("operator node needs at least one argument");
    Node n;
    n.kind = kind;
    n.args = std::move(args);
    return make(std::move(n));
}

bool operator==(const BoundExpr& a, const BoundExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.value() != b.value() || a.name() != b.name()) return false;
    const auto xs = a.args();
    const auto ys = b.args();
    return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
}

// ---------------------------------------------------------------------------
// Normalization: a sum of monomials over opaque atoms (symbols, max, min).

namespace {

struct Monomial {
    std::vector<BoundExpr> atoms; // sorted by printed form
    std::int64_t coef{0};
};
using Key = std::vector<std::string>;
using Poly = std::map<Key, Monomial>;

Key key_of(const std::vector<BoundExpr>& atoms) {
    Key k;
    k.reserve(atoms.size());
    for (const auto& a : atoms) k.push_back(a.str());
    return k;
}

void add_term(Poly& p, Monomial m) {
    if (m.coef == 0) return;
    auto key = key_of(m.atoms);
    auto [it, inserted] = p.try_emplace(std::move(key), m);
    if (!inserted) {
        it->second.coef = checked_add(it->second.coef, m.coef);
        if (it->second.coef == 0) p.erase(it);
    }
}

Poly constant_poly(std::int64_t c) {
    Poly p;
    add_term(p, Monomial{{}, c});
    return p;
}

Poly atom_poly(BoundExpr atom) {
    Poly p;
    add_term(p, Monomial{{std::move(atom)}, 1});
    return p;
}

Poly multiply(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ma] : a) {
        for (const auto& [kb, mb] : b) {
            Monomial m;
            m.atoms = ma.atoms;
            m.atoms.insert(m.atoms.end(), mb.atoms.begin(), mb.atoms.end());
            std::stable_sort(m.atoms.begin(), m.atoms.end(), by_text);
            m.coef = checked_mul(ma.coef, mb.coef);
            add_term(out, std::move(m));
        }
    }
    return out;
}

BoundExpr from_poly(const Poly& p) {
    std::vector<BoundExpr> terms;
    for (const auto& [key, m] : p) {
        if (m.atoms.empty()) {
            terms.push_back(BoundExpr::constant(m.coef));
        } else if (m.coef == 1 && m.atoms.size() == 1) {
            terms.push_back(m.atoms.front());
        } else {
            std::vector<BoundExpr> factors;
            if (m.coef != 1) factors.push_back(BoundExpr::constant(m.coef));
            factors.insert(factors.end(), m.atoms.begin(), m.atoms.end());
            terms.push_back(BoundExpr::raw(BoundExpr::Kind::Product, std::move(factors)));
        }
    }
    if (terms.empty()) return BoundExpr::constant(0);
    if (terms.size() == 1) return terms.front();
    std::sort(terms.begin(), terms.end(), by_text);
    return BoundExpr::raw(BoundExpr::Kind::Sum, std::move(terms));
}

std::optional<Poly> to_poly(const BoundExpr& e);

// Returns nullopt for undef; otherwise the normalized extremum.
std::optional<BoundExpr> normalize_extremum(BoundExpr::Kind kind, std::span<const BoundExpr> raw_args) {
    const bool is_max = kind == BoundExpr::Kind::Max;
    std::vector<BoundExpr> items;
    std::optional<std::int64_t> folded;
    for (const auto& raw_arg : raw_args) {
        auto poly = to_poly(raw_arg);
        if (!poly) return std::nullopt;
        const BoundExpr arg = from_poly(*poly);
        std::vector<BoundExpr> parts;
        if (arg.kind() == kind) {
            parts.assign(arg.args().begin(), arg.args().end());
        } else {
            parts.push_back(arg);
        }
        for (auto& part : parts) {
            if (part.is_constant()) {
                const auto v = part.value();
                folded = !folded ? v : (is_max ? std::max(*folded, v) : std::min(*folded, v));
            } else {
                items.push_back(std::move(part));
            }
        }
    }
    std::sort(items.begin(), items.end(), by_text);
    items.erase(std::unique(items.begin(), items.end(),
                            [](const BoundExpr& a, const BoundExpr& b) { return a.str() == b.str(); }),
                items.end());
    if (folded && *folded <= 0) {
        if (is_max) {
            // A nonpositive constant is dominated by any provably nonnegative argument.
            if (std::any_of(items.begin(), items.end(), provably_nonnegative)) folded.reset();
        } else {
            std::erase_if(items, provably_nonnegative);
        }
    }
    if (folded) items.push_back(BoundExpr::constant(*folded));
    std::sort(items.begin(), items.end(), by_text);
    if (items.size() == 1) return items.front();
    return BoundExpr::raw(kind, std::move(items));
}

std::optional<Poly> to_poly(const BoundExpr& e) {
    using K = BoundExpr::Kind;
    switch (e.kind()) {
    case K::Undef: return std::nullopt;
    case K::Int: return constant_poly(e.value());
    case K::Sym: return atom_poly(e);
    case K::Sum: {
        Poly acc;
        for (const auto& a : e.args()) {
            auto p = to_poly(a);
            if (!p) return std::nullopt;
            for (auto& [k, m] : *p) add_term(acc, m);
        }
        return acc;
    }
    case K::Product: {
        Poly acc = constant_poly(1);
        for (const auto& a : e.args()) {
            auto p = to_poly(a);
            if (!p) return std::nullopt;
            acc = multiply(acc, *p);
        }
        return acc;
    }
    case K::Max:
    case K::Min: {
        auto ext = normalize_extremum(e.kind(), e.args());
        if (!ext) return std::nullopt;
        if (ext->kind() == e.kind()) return atom_poly(*ext);
        return to_poly(*ext);
    }
    }
    return std::nullopt;
}

} // namespace

BoundExpr normalize(const BoundExpr& e) {
    auto p = to_poly(e);
    if (!p) return BoundExpr::undefined();
    return from_poly(*p);
}

BoundExpr build(BoundOp op, std::vector<BoundExpr> args) {
    if (args.empty()) throw InputError("bound operator applied to no arguments");
    using K = BoundExpr::Kind;
    K kind = K::Sum;
    switch (op) {
    case BoundOp::Add: kind = K::Sum; break;
    case BoundOp::Mul: kind = K::Product; break;
    case BoundOp::Max: kind = K::Max; break;
    case BoundOp::Min: kind = K::Min; break;
    }
    return normalize(BoundExpr::raw(kind, std::move(args)));
}

BoundExpr operator+(const BoundExpr& a, const BoundExpr& b) { return build(BoundOp::Add, {a, b}); }
BoundExpr operator*(const BoundExpr& a, const BoundExpr& b) { return build(BoundOp::Mul, {a, b}); }
BoundExpr max_of(const BoundExpr& a, const BoundExpr& b) { return build(BoundOp::Max, {a, b}); }
BoundExpr min_of(const BoundExpr& a, const BoundExpr& b) { return build(BoundOp::Min, {a, b}); }

std::optional<std::int64_t> evaluate(const BoundExpr& e, const Valuation& valuation) {
    using K = BoundExpr::Kind;
    switch (e.kind()) {
    case K::Undef: return std::nullopt;
    case K::Int: return e.value();
    case K::Sym: {
        auto it = valuation.find(e.name());
        if (it == valuation.end()) throw InputError("no value for symbolic constant '" + e.name() + "'");
        return it->second;
    }
    default: break;
    }
    std::optional<std::int64_t> acc;
    for (const auto& a : e.args()) {
        auto v = evaluate(a, valuation);
        if (!v) return std::nullopt;
        if (!acc) {
            acc = *v;
            continue;
        }
        switch (e.kind()) {
        case K::Sum: acc = checked_add(*acc, *v); break;
        case K::Product: acc = checked_mul(*acc, *v); break;
        case K::Max: acc = std::max(*acc, *v); break;
        case K::Min: acc = std::min(*acc, *v); break;
        default: break;
        }
    }
    return acc;
}

bool provably_nonnegative(const BoundExpr& e) {
    using K = BoundExpr::Kind;
    const auto args = e.args();
    switch (e.kind()) {
    case K::Int: return e.value() >= 0;
    case K::Sym: return true;
    case K::Undef: return false;
    case K::Max: return std::any_of(args.begin(), args.end(), provably_nonnegative);
    case K::Sum:
    case K::Product:
    case K::Min: return std::all_of(args.begin(), args.end(), provably_nonnegative);
    }
    return false;
}

namespace {
void collect_symbols(const BoundExpr& e, std::set<std::string>& out) {
    if (e.kind() == BoundExpr::Kind::Sym) out.insert(e.name());
    for (const auto& a : e.args()) collect_symbols(a, out);
}
} // namespace

std::set<std::string> symbols(const BoundExpr& e) {
    std::set<std::string> out;
    collect_symbols(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ExprParser {
  public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    BoundExpr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("bound expression, column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    BoundExpr expr() {
        std::vector<BoundExpr> terms{term()};
        while (accept('+')) terms.push_back(term());
        if (terms.size() == 1) return terms.front();
        return BoundExpr::raw(BoundExpr::Kind::Sum, std::move(terms));
    }

    BoundExpr term() {
        std::vector<BoundExpr> factors{factor()};
        while (accept('*')) factors.push_back(factor());
        if (factors.size() == 1) return factors.front();
        return BoundExpr::raw(BoundExpr::Kind::Product, std::move(factors));
    }

    BoundExpr factor() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return integer();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string ident(text_.substr(start, pos_ - start));
            if (ident == "undef") return BoundExpr::undefined();
            if (ident == "max" || ident == "min") {
                expect('(');
                std::vector<BoundExpr> args{expr()};
                while (accept(',')) args.push_back(expr());
                expect(')');
                return BoundExpr::raw(ident == "max" ? BoundExpr::Kind::Max : BoundExpr::Kind::Min,
                                      std::move(args));
            }
            return BoundExpr::symbol(std::move(ident));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    BoundExpr integer() {
        const auto start = pos_;
        if (text_[pos_] == '-') ++pos_;
        const auto digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) fail("expected digits");
        const std::string lexeme(text_.substr(start, pos_ - start));
        try {
            return BoundExpr::constant(std::stoll(lexeme));
        } catch (const std::out_of_range&) {
            fail("integer literal out of range");
        }
    }

    std::string_view text_;
    std::size_t pos_{0};
};

} // namespace

BoundExpr parse_bound_expr(std::string_view text) { return normalize(ExprParser(text).parse()); }

} // namespace dcbound
