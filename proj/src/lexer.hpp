// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "diagnostics.hpp"

namespace hashcl {

enum class Tok {
    End,
    Ident,
    Number,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LAngle,
    RAngle,
    Comma,
    Colon,
    Dot,
    Pipe,
    Star,
    Minus,
    Plus,
    Semicolon,
};

const char* token_name(Tok tok);

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

// On-demand lexer. `//` and `/* */` comments are skipped; the Unicode angle
// brackets U+27E8/U+27E9 are accepted as '<' and '>'.
class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    Token next();

    // Raw text from the current offset up to (not including) the `end`
    // keyword closing the current block; nested begin/end pairs are balanced.
    // The closing `end` is consumed. Leading and trailing blank space is trimmed.
    std::string raw_block(SourcePos opened_at);

private:
    char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    void bump();
    void skip_trivia();
    SourcePos here() const { return {line_, col_}; }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace hashcl
