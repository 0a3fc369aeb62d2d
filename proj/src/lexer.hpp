// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dcbound/diagnostics.hpp"

namespace dcbound::detail {

enum class TokenKind { Ident, Int, Punct, End };

struct Token {
    TokenKind kind{TokenKind::End};
    std::string text;
    SourcePos pos;

    [[nodiscard]] bool is(std::string_view punct) const { return kind == TokenKind::Punct && text == punct; }
    [[nodiscard]] bool is_word(std::string_view word) const { return kind == TokenKind::Ident && text == word; }
};

// Pull lexer shared by the DCP and program readers. '#' starts a comment.
class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    const Token& peek();
    Token next();

    // Raw characters up to (and consuming) `close`; used for parenthesized
    // names such as (l-i). Must be called with no token peeked.
    std::optional<std::string> raw_until(char close);

    [[nodiscard]] SourcePos pos() const { return {line_, col_}; }

  private:
    Token scan();
    void skip_space();
    char advance();

    std::string_view text_;
    std::size_t at_{0};
    int line_{1};
    int col_{1};
    std::optional<Token> peeked_;
};

} // namespace dcbound::detail
