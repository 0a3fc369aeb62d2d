// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/program.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace dcbound {

std::optional<LinExpr> Comparison::positive_form() const {
    switch (op) {
    case RelOp::Gt: return lhs - rhs;
    case RelOp::Ge: return lhs - rhs + LinExpr::constant(1);
    case RelOp::Lt: return rhs - lhs;
    case RelOp::Le: return rhs - lhs + LinExpr::constant(1);
    case RelOp::Eq: return std::nullopt;
    }
    return std::nullopt;
}

bool Comparison::holds(const std::map<std::string, std::int64_t>& state) const {
    const auto a = lhs.evaluate(state);
    const auto b = rhs.evaluate(state);
    switch (op) {
    case RelOp::Lt: return a < b;
    case RelOp::Le: return a <= b;
    case RelOp::Gt: return a > b;
    case RelOp::Ge: return a >= b;
    case RelOp::Eq: return a == b;
    }
    return false;
}

const Assignment* ProgramTransition::assignment_of(const std::string& var) const {
    for (const auto& a : updates) {
        if (a.var == var) return &a;
    }
    return nullptr;
}

Program::Program(std::vector<std::string> params, std::vector<std::string> variables, std::string entry,
                 std::string exit, std::vector<ProgramTransition> transitions)
    : params_(std::move(params)), variables_(std::move(variables)), entry_(std::move(entry)),
      exit_(std::move(exit)), transitions_(std::move(transitions)) {
    index();
}

void Program::index() {
    std::sort(params_.begin(), params_.end());
    std::sort(variables_.begin(), variables_.end());
    std::stable_sort(transitions_.begin(), transitions_.end(),
                     [](const ProgramTransition& a, const ProgramTransition& b) { return a.id < b.id; });
    locations_ = {entry_, exit_};
    for (const auto& t : transitions_) {
        locations_.push_back(t.source);
        locations_.push_back(t.target);
    }
    std::sort(locations_.begin(), locations_.end());
    locations_.erase(std::unique(locations_.begin(), locations_.end()), locations_.end());
    for (const auto& l : locations_) incoming_[l];
    for (std::size_t i = 0; i < transitions_.size(); ++i) incoming_[transitions_[i].target].push_back(i);

    // Greatest fixpoint of the forward must-assignment analysis.
    const std::set<std::string> all(variables_.begin(), variables_.end());
    for (const auto& l : locations_) must_defined_[l] = l == entry_ ? std::set<std::string>{} : all;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& l : locations_) {
            if (l == entry_ || incoming_[l].empty()) continue;
            std::optional<std::set<std::string>> meet;
            for (auto t : incoming_[l]) {
                const auto& tr = transitions_[t];
                auto out = must_defined_[tr.source];
                for (const auto& a : tr.updates) out.insert(a.var);
                if (!meet) {
                    meet = std::move(out);
                } else {
                    std::erase_if(*meet, [&](const std::string& v) { return !out.contains(v); });
                }
            }
            if (*meet != must_defined_[l]) {
                must_defined_[l] = std::move(*meet);
                changed = true;
            }
        }
    }
}

bool Program::is_param(const std::string& name) const {
    return std::binary_search(params_.begin(), params_.end(), name);
}

std::span<const std::size_t> Program::incoming(const std::string& loc) const {
    static const std::vector<std::size_t> none;
    auto it = incoming_.find(loc);
    return it == incoming_.end() ? std::span<const std::size_t>(none) : std::span<const std::size_t>(it->second);
}

const std::set<std::string>& Program::must_defined_at(const std::string& loc) const {
    static const std::set<std::string> none;
    auto it = must_defined_.find(loc);
    return it == must_defined_.end() ? none : it->second;
}

// ---------------------------------------------------------------------------

namespace {

using detail::Lexer;
using detail::Token;
using detail::TokenKind;

struct SyntaxError {
    Diagnostic diag;
};

const std::set<std::string, std::less<>> keywords{"prog", "params", "vars", "entry", "exit", "trans", "when", "and"};

class ProgramReader {
  public:
    explicit ProgramReader(std::string_view text) : lex_(text) {}

    Parsed<Program> read() {
        if (lex_.peek().is_word("prog")) lex_.next();
        while (lex_.peek().kind != TokenKind::End) {
            try {
                statement();
            } catch (const SyntaxError& e) {
                diags_.push_back(e.diag);
                while (lex_.peek().kind != TokenKind::End && !lex_.peek().is_word("trans")) lex_.next();
            }
        }
        if (!entry_) diags_.push_back({lex_.pos(), "missing 'entry:' declaration"});
        if (!exit_) diags_.push_back({lex_.pos(), "missing 'exit:' declaration"});
        if (diags_.empty()) check();
        if (!diags_.empty()) return {std::nullopt, diags_};
        return {Program(params_, vars_, *entry_, *exit_, std::move(transitions_)), {}};
    }

  private:
    [[noreturn]] static void fail(const Token& at, const std::string& what) { throw SyntaxError{{at.pos, what}}; }

    void expect(std::string_view p) {
        Token t = lex_.next();
        if (!t.is(p)) fail(t, "expected '" + std::string(p) + "' but found '" + t.text + "'");
    }

    std::string name() {
        Token t = lex_.next();
        if (t.kind != TokenKind::Ident || keywords.contains(t.text)) {
            fail(t, "expected a name but found '" + t.text + "'");
        }
        return t.text;
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> out;
        if (lex_.peek().kind != TokenKind::Ident || keywords.contains(lex_.peek().text)) return out;
        out.push_back(name());
        while (lex_.peek().is(",")) {
            lex_.next();
            out.push_back(name());
        }
        return out;
    }

    LinExpr term() {
        std::int64_t sign = 1;
        while (lex_.peek().is("-")) {
            lex_.next();
            sign = -sign;
        }
        Token t = lex_.next();
        if (t.kind == TokenKind::Int) {
            std::int64_t v = 0;
            try {
                v = std::stoll(t.text);
            } catch (const std::out_of_range&) {
                fail(t, "integer literal out of range");
            }
            if (lex_.peek().is("*")) {
                lex_.next();
                Token var = lex_.next();
                if (var.kind != TokenKind::Ident) fail(var, "expected a variable after '*'");
                return LinExpr::variable(var.text, sign * v);
            }
            return LinExpr::constant(sign * v);
        }
        if (t.kind == TokenKind::Ident && !keywords.contains(t.text)) return LinExpr::variable(t.text, sign);
        fail(t, "expected a term but found '" + t.text + "'");
    }

    LinExpr lin_expr() {
        LinExpr e = term();
        while (lex_.peek().is("+") || lex_.peek().is("-")) {
            const bool minus = lex_.next().is("-");
            const auto rhs = term();
            e += minus ? rhs.scaled(-1) : rhs;
        }
        return e;
    }

    Comparison comparison() {
        Comparison c;
        c.lhs = lin_expr();
        Token op = lex_.next();
        if (op.is("<")) c.op = RelOp::Lt;
        else if (op.is("<=")) c.op = RelOp::Le;
        else if (op.is(">")) c.op = RelOp::Gt;
        else if (op.is(">=")) c.op = RelOp::Ge;
        else if (op.is("==") || op.is("=")) c.op = RelOp::Eq;
        else fail(op, "expected a comparison operator but found '" + op.text + "'");
        c.rhs = lin_expr();
        return c;
    }

    void statement() {
        Token kw = lex_.next();
        if (kw.is_word("trans")) {
            transition(kw);
            return;
        }
        if (kw.kind != TokenKind::Ident) fail(kw, "expected a declaration but found '" + kw.text + "'");
        expect(":");
        if (kw.text == "params") {
            for (auto& n : name_list()) params_.push_back(std::move(n));
        } else if (kw.text == "vars") {
            for (auto& n : name_list()) vars_.push_back(std::move(n));
        } else if (kw.text == "entry") {
            entry_ = name();
        } else if (kw.text == "exit") {
            exit_ = name();
        } else {
            fail(kw, "unknown declaration '" + kw.text + "'");
        }
    }

    void transition(const Token& kw) {
        ProgramTransition t;
        t.pos = kw.pos;
        Token id = lex_.next();
        if (id.kind != TokenKind::Ident) fail(id, "expected a transition id but found '" + id.text + "'");
        t.id = id.text;
        expect(":");
        t.source = name();
        expect("->");
        t.target = name();
        if (lex_.peek().is_word("when")) {
            lex_.next();
            t.guard.push_back(comparison());
            while (lex_.peek().is_word("and") || lex_.peek().is("&&")) {
                lex_.next();
                t.guard.push_back(comparison());
            }
        }
        expect("{");
        while (!lex_.peek().is("}")) {
            if (lex_.peek().kind == TokenKind::End) fail(lex_.peek(), "unterminated transition body");
            Assignment a;
            a.var = name();
            expect(":=");
            if (lex_.peek().is("?")) {
                lex_.next();
            } else {
                a.value = lin_expr();
            }
            expect(";");
            t.updates.push_back(std::move(a));
        }
        lex_.next();
        transitions_.push_back(std::move(t));
    }

    void check() {
        const std::set<std::string> params(params_.begin(), params_.end());
        const std::set<std::string> vars(vars_.begin(), vars_.end());
        if (params.size() != params_.size() || vars.size() != vars_.size()) {
            diags_.push_back({{}, "duplicate declaration"});
        }
        for (const auto& p : params) {
            if (vars.contains(p)) diags_.push_back({{}, "'" + p + "' is declared both as a parameter and a variable"});
        }
        auto known = [&](const LinExpr& e, const ProgramTransition& t) {
            for (const auto& v : e.variables()) {
                if (!vars.contains(v) && !params.contains(v)) {
                    diags_.push_back({t.pos, "unknown name '" + v + "' in transition '" + t.id + "'"});
                }
            }
        };
        std::set<std::string> ids;
        for (const auto& t : transitions_) {
            if (!ids.insert(t.id).second) diags_.push_back({t.pos, "duplicate transition id '" + t.id + "'"});
            if (t.target == *entry_) diags_.push_back({t.pos, "transition '" + t.id + "' enters the entry location"});
            if (t.source == *exit_) diags_.push_back({t.pos, "transition '" + t.id + "' leaves the exit location"});
            for (const auto& g : t.guard) {
                known(g.lhs, t);
                known(g.rhs, t);
            }
            std::set<std::string> assigned;
            for (const auto& a : t.updates) {
                if (!vars.contains(a.var)) {
                    diags_.push_back({t.pos, "assignment to '" + a.var + "', which is not a variable"});
                }
                if (!assigned.insert(a.var).second) {
                    diags_.push_back({t.pos, "transition '" + t.id + "' assigns '" + a.var + "' twice"});
                }
                if (a.value) known(*a.value, t);
            }
        }
    }

    Lexer lex_;
    std::vector<Diagnostic> diags_;
    std::vector<std::string> params_;
    std::vector<std::string> vars_;
    std::optional<std::string> entry_;
    std::optional<std::string> exit_;
    std::vector<ProgramTransition> transitions_;
};

} // namespace

Parsed<Program> parse_program(std::string_view text) { return ProgramReader(text).read(); }

Program parse_program_or_throw(std::string_view text) {
    auto parsed = parse_program(text);
    if (!parsed) throw ParseError(std::move(parsed.diagnostics));
    return std::move(*parsed.value);
}

} // namespace dcbound
