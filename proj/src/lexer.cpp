// SPDX-License-Identifier: Apache-2.0
#include "lexer.hpp"

#include <cctype>

namespace hashcl {

const char* token_name(Tok tok)
{
    switch (tok) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LAngle: return "'<'";
        case Tok::RAngle: return "'>'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::Pipe: return "'|'";
        case Tok::Star: return "'*'";
        case Tok::Minus: return "'-'";
        case Tok::Plus: return "'+'";
        case Tok::Semicolon: return "';'";
    }
    return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

void Lexer::bump()
{
    if (pos_ >= src_.size()) return;
    char c = src_[pos_++];
    if (c == '\n') {
        ++line_;
        col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col_;  // count code points, not continuation bytes
    }
}

void Lexer::skip_trivia()
{
    for (;;) {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump();
        } else if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && peek() != '\n') bump();
        } else if (c == '/' && peek(1) == '*') {
            SourcePos opened = here();
            bump();
            bump();
            while (!(peek() == '*' && peek(1) == '/')) {
                if (pos_ >= src_.size()) throw Error(ErrorCode::LexError, "unterminated comment", opened);
                bump();
            }
            bump();
            bump();
        } else {
            return;
        }
    }
}

Token Lexer::next()
{
    skip_trivia();
    Token tok;
    tok.pos = here();
    if (pos_ >= src_.size()) return tok;

    char c = peek();
    if (ident_start(c)) {
        std::size_t begin = pos_;
        while (ident_char(peek())) bump();
        tok.kind = Tok::Ident;
        tok.text = std::string(src_.substr(begin, pos_ - begin));
        return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t begin = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) bump();
        tok.kind = Tok::Number;
        tok.text = std::string(src_.substr(begin, pos_ - begin));
        return tok;
    }
    // U+27E8 / U+27E9 mathematical angle brackets: E2 9F A8 / E2 9F A9.
    if (static_cast<unsigned char>(c) == 0xE2 && static_cast<unsigned char>(peek(1)) == 0x9F &&
        (static_cast<unsigned char>(peek(2)) == 0xA8 || static_cast<unsigned char>(peek(2)) == 0xA9)) {
        tok.kind = static_cast<unsigned char>(peek(2)) == 0xA8 ? Tok::LAngle : Tok::RAngle;
        tok.text = tok.kind == Tok::LAngle ? "<" : ">";
        bump();
        bump();
        bump();
        return tok;
    }

    Tok kind;
    switch (c) {
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '<': kind = Tok::LAngle; break;
        case '>': kind = Tok::RAngle; break;
        case ',': kind = Tok::Comma; break;
        case ':': kind = Tok::Colon; break;
        case '.': kind = Tok::Dot; break;
        case '|': kind = Tok::Pipe; break;
        case '*': kind = Tok::Star; break;
        case '-': kind = Tok::Minus; break;
        case '+': kind = Tok::Plus; break;
        case ';': kind = Tok::Semicolon; break;
        default: {
            unsigned char u = static_cast<unsigned char>(c);
            std::string shown = std::isprint(u) ? std::string(1, c) : "\\x" + std::to_string(u);
            throw Error(ErrorCode::LexError, "unexpected character '" + shown + "'", tok.pos);
        }
    }
    tok.kind = kind;
    tok.text = std::string(1, c);
    bump();
    return tok;
}

std::string Lexer::raw_block(SourcePos opened_at)
{
    std::size_t begin = pos_;
    int depth = 0;
    while (pos_ < src_.size()) {
        char c = peek();
        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && peek() != '\n') bump();
            continue;
        }
        if (c == '/' && peek(1) == '*') {
            bump();
            bump();
            while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) bump();
            bump();
            bump();
            continue;
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            bump();
            while (pos_ < src_.size() && peek() != quote && peek() != '\n') {
                if (peek() == '\\') bump();
                bump();
            }
            bump();
            continue;
        }
        if (ident_start(c) && (pos_ == 0 || !ident_char(src_[pos_ - 1]))) {
            std::size_t word_begin = pos_;
            while (ident_char(peek())) bump();
            std::string_view word = src_.substr(word_begin, pos_ - word_begin);
            if (word == "begin") {
                ++depth;
            } else if (word == "end") {
                if (depth == 0) {
                    std::string_view body = src_.substr(begin, word_begin - begin);
                    auto first = body.find_first_not_of(" \t\r\n");
                    if (first == std::string_view::npos) return {};
                    auto line_start = body.find_last_of('\n', first);
                    first = line_start == std::string_view::npos ? 0 : line_start + 1;
                    auto last = body.find_last_not_of(" \t\r\n");
                    return std::string(body.substr(first, last - first + 1));
                }
                --depth;
            }
            continue;
        }
        bump();
    }
    throw Error(ErrorCode::SyntaxError, "unterminated unit body; expected 'end'", opened_at);
}

}  // namespace hashcl
