// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lexer.hpp"

#include <array>
#include <cctype>

namespace dcbound::detail {

namespace {
bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
constexpr std::array<std::string_view, 7> two_char_puncts{"->", "<=", ">=", ":=", "&&", "==", "!="};
} // namespace

char Lexer::advance() {
    const char c = text_[at_++];
    if (c == '\n') {
        ++line_;
        col_ = 1;
    } else {
        ++col_;
    }
    return c;
}

void Lexer::skip_space() {
    while (at_ < text_.size()) {
        const char c = text_[at_];
        if (c == '#') {
            while (at_ < text_.size() && text_[at_] != '\n') advance();
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
        } else {
            break;
        }
    }
}

Token Lexer::scan() {
    skip_space();
    Token tok;
    tok.pos = pos();
    if (at_ >= text_.size()) return tok;
    const char c = text_[at_];
    if (ident_start(c)) {
        tok.kind = TokenKind::Ident;
        while (at_ < text_.size() && ident_char(text_[at_])) tok.text += advance();
        return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        tok.kind = TokenKind::Int;
        while (at_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_]))) tok.text += advance();
        return tok;
    }
    tok.kind = TokenKind::Punct;
    for (auto p : two_char_puncts) {
        if (text_.substr(at_, 2) == p) {
            tok.text += advance();
            tok.text += advance();
            return tok;
        }
    }
    tok.text += advance();
    return tok;
}

const Token& Lexer::peek() {
    if (!peeked_) peeked_ = scan();
    return *peeked_;
}

Token Lexer::next() {
    if (peeked_) {
        Token t = std::move(*peeked_);
        peeked_.reset();
        return t;
    }
    return scan();
}

std::optional<std::string> Lexer::raw_until(char close) {
    std::string out;
    while (at_ < text_.size()) {
        const char c = text_[at_];
        if (c == close) {
            advance();
            return out;
        }
        if (c == '\n' || c == '(') return std::nullopt;
        out += advance();
    }
    return std::nullopt;
}

} // namespace dcbound::detail
