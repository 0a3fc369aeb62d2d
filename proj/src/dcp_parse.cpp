// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include <set>

#include "dcbound/dcp.hpp"
#include "lexer.hpp"

namespace dcbound {

namespace {

using detail::Lexer;
using detail::Token;
using detail::TokenKind;

const std::set<std::string, std::less<>> keywords{"dcp", "consts", "vars", "entry",
                                                  "exit", "locations", "trans", "guard"};

struct SyntaxError {
    Diagnostic diag;
};

struct RawConstraint {
    std::string lhs;
    std::string rhs_name; // empty when the right-hand side is an integer
    std::int64_t rhs_value{0};
    std::int64_t offset{0};
};

struct RawTransition {
    Transition transition;
    std::vector<RawConstraint> constraints;
};

class DcpReader {
  public:
    explicit DcpReader(std::string_view text) : lex_(text) {}

    Parsed<Dcp> read() {
        if (lex_.peek().is_word("dcp")) lex_.next();
        while (lex_.peek().kind != TokenKind::End) {
            try {
                statement();
            } catch (const SyntaxError& e) {
                diags_.push_back(e.diag);
                recover();
            }
        }
        if (!entry_) diags_.push_back({lex_.pos(), "missing 'entry:' declaration"});
        if (!exit_) diags_.push_back({lex_.pos(), "missing 'exit:' declaration"});
        if (!diags_.empty()) return {std::nullopt, diags_};
        return resolve();
    }

  private:
    [[noreturn]] void fail(const Token& at, const std::string& what) {
        throw SyntaxError{{at.pos, what}};
    }

    void recover() {
        while (lex_.peek().kind != TokenKind::End && !lex_.peek().is_word("trans")) lex_.next();
    }

    Token expect_punct(std::string_view p) {
        Token t = lex_.next();
        if (!t.is(p)) fail(t, "expected '" + std::string(p) + "' but found '" + t.text + "'");
        return t;
    }

    std::string name() {
        const Token& t = lex_.peek();
        if (t.is("(")) {
            const Token open = lex_.next();
            auto raw = lex_.raw_until(')');
            if (!raw || raw->empty()) fail(open, "unterminated parenthesized name");
            return "(" + *raw + ")";
        }
        if (t.kind != TokenKind::Ident || keywords.contains(t.text)) {
            fail(t, "expected a name but found '" + t.text + "'");
        }
        return lex_.next().text;
    }

    std::int64_t integer() {
        bool negative = false;
        if (lex_.peek().is("-")) {
            lex_.next();
            negative = true;
        }
        Token t = lex_.next();
        if (t.kind != TokenKind::Int) fail(t, "expected an integer but found '" + t.text + "'");
        try {
            const auto v = std::stoll(t.text);
            return negative ? -v : v;
        } catch (const std::out_of_range&) {
            fail(t, "integer literal out of range");
        }
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> out;
        const Token& t = lex_.peek();
        const bool starts_name = t.is("(") || (t.kind == TokenKind::Ident && !keywords.contains(t.text));
        if (!starts_name) return out;
        out.push_back(name());
        while (lex_.peek().is(",")) {
            lex_.next();
            out.push_back(name());
        }
        return out;
    }

    void statement() {
        Token kw = lex_.next();
        if (kw.kind != TokenKind::Ident) fail(kw, "expected a declaration but found '" + kw.text + "'");
        if (kw.text == "trans") {
            transition(kw);
            return;
        }
        expect_punct(":");
        if (kw.text == "consts") {
            for (auto& n : name_list()) consts_.push_back({std::move(n), kw.pos});
        } else if (kw.text == "vars") {
            for (auto& n : name_list()) vars_.push_back({std::move(n), kw.pos});
        } else if (kw.text == "locations") {
            for (auto& n : name_list()) locations_.push_back(std::move(n));
            declared_locations_ = true;
        } else if (kw.text == "entry") {
            entry_ = name();
        } else if (kw.text == "exit") {
            exit_ = name();
        } else {
            fail(kw, "unknown declaration '" + kw.text + "'");
        }
    }

    void transition(const Token& kw) {
        RawTransition raw;
        auto& t = raw.transition;
        t.pos = kw.pos;
        Token id = lex_.next();
        if (id.kind != TokenKind::Ident) fail(id, "expected a transition id but found '" + id.text + "'");
        t.id = id.text;
        expect_punct(":");
        t.source = name();
        expect_punct("->");
        t.target = name();
        if (lex_.peek().is_word("guard")) {
            lex_.next();
            expect_punct("(");
            auto names = name_list();
            if (names.empty()) fail(lex_.peek(), "empty guard");
            t.guard.insert(names.begin(), names.end());
            expect_punct(")");
        }
        expect_punct("{");
        while (!lex_.peek().is("}")) {
            if (lex_.peek().kind == TokenKind::End) fail(lex_.peek(), "unterminated transition body");
            RawConstraint dc;
            dc.lhs = name();
            expect_punct("'");
            expect_punct("<=");
            if (lex_.peek().kind == TokenKind::Int || lex_.peek().is("-")) {
                dc.rhs_value = integer();
            } else {
                dc.rhs_name = name();
            }
            if (lex_.peek().is("+") || lex_.peek().is("-")) {
                const bool minus = lex_.next().is("-");
                const auto c = integer();
                dc.offset = minus ? -c : c;
            }
            expect_punct(";");
            raw.constraints.push_back(std::move(dc));
        }
        lex_.next();
        transitions_.push_back(std::move(raw));
    }

    Parsed<Dcp> resolve() {
        std::set<std::string> vars;
        std::set<std::string> consts;
        for (const auto& [n, pos] : vars_) {
            if (!vars.insert(n).second) diags_.push_back({pos, "variable '" + n + "' declared twice"});
        }
        for (const auto& [n, pos] : consts_) {
            if (!consts.insert(n).second) diags_.push_back({pos, "constant '" + n + "' declared twice"});
            if (vars.contains(n)) diags_.push_back({pos, "'" + n + "' is declared both as a variable and a constant"});
        }
        const std::set<std::string> known_locations(locations_.begin(), locations_.end());
        auto check_location = [&](const std::string& loc, SourcePos pos) {
            if (vars.contains(loc) || consts.contains(loc)) {
                diags_.push_back({pos, "location '" + loc + "' clashes with a variable or constant"});
            }
            if (declared_locations_ && !known_locations.contains(loc)) {
                diags_.push_back({pos, "unknown location '" + loc + "'"});
            }
        };
        check_location(*entry_, {});
        check_location(*exit_, {});

        std::vector<Transition> ts;
        for (auto& raw : transitions_) {
            auto t = std::move(raw.transition);
            check_location(t.source, t.pos);
            check_location(t.target, t.pos);
            for (const auto& g : t.guard) {
                if (!vars.contains(g)) {
                    diags_.push_back({t.pos, "guard on unknown variable '" + g + "' in transition '" + t.id + "'"});
                }
            }
            for (const auto& dc : raw.constraints) {
                if (!vars.contains(dc.lhs)) {
                    diags_.push_back(
                        {t.pos, "constraint on unknown variable '" + dc.lhs + "' in transition '" + t.id + "'"});
                    continue;
                }
                Atom rhs = Atom::integer(dc.rhs_value);
                if (!dc.rhs_name.empty()) {
                    if (vars.contains(dc.rhs_name)) {
                        rhs = Atom::variable(dc.rhs_name);
                    } else if (consts.contains(dc.rhs_name)) {
                        rhs = Atom::symbolic(dc.rhs_name);
                    } else {
                        diags_.push_back({t.pos, "unknown name '" + dc.rhs_name + "' in transition '" + t.id + "'"});
                        continue;
                    }
                }
                t.updates.push_back({dc.lhs, rhs, dc.offset});
            }
            ts.push_back(std::move(t));
        }
        if (!diags_.empty()) return {std::nullopt, diags_};

        Dcp dcp({consts.begin(), consts.end()}, {vars.begin(), vars.end()}, *entry_, *exit_, std::move(ts), locations_);
        auto semantic = validate(dcp);
        if (!semantic.empty()) return {std::nullopt, std::move(semantic)};
        return {std::move(dcp), {}};
    }

    struct Declared {
        std::string name;
        SourcePos pos;
    };

    Lexer lex_;
    std::vector<Diagnostic> diags_;
    std::vector<Declared> consts_;
    std::vector<Declared> vars_;
    std::vector<std::string> locations_;
    bool declared_locations_{false};
    std::optional<std::string> entry_;
    std::optional<std::string> exit_;
    std::vector<RawTransition> transitions_;
};

} // namespace

Parsed<Dcp> parse_dcp(std::string_view text) { return DcpReader(text).read(); }

Dcp parse_dcp_or_throw(std::string_view text) {
    auto parsed = parse_dcp(text);
    if (!parsed) throw ParseError(std::move(parsed.diagnostics));
    return std::move(*parsed.value);
}

} // namespace dcbound
