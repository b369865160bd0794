#pragma once

#include <cstdint>
#include <string>

#include "fxlang/errors.hpp"

namespace fxlang {

enum class TokenKind {
    Int,
    Ident,
    Plus,
    LParen,
    RParen,
    Let,
    Fun,
    Eq,
    In,
    Comma,
    Eof,
};

struct Token {
    TokenKind kind = TokenKind::Eof;
    long long value = 0;   // Int only
    std::string text;      // Ident and keyword lexemes
    SourcePos pos;
};

inline std::string describe(const Token& t) {
    switch (t.kind) {
        case TokenKind::Int: return "INT(" + std::to_string(t.value) + ")";
        case TokenKind::Ident: return "IDENT(" + t.text + ")";
        case TokenKind::Plus: return "PLUS";
        case TokenKind::LParen: return "LPAREN";
        case TokenKind::RParen: return "RPAREN";
        case TokenKind::Let: return "LET";
        case TokenKind::Fun: return "FUN";
        case TokenKind::Eq: return "EQ";
        case TokenKind::In: return "IN";
        case TokenKind::Comma: return "COMMA";
        case TokenKind::Eof: return "EOF";
    }
    return "?";
}

}  // namespace fxlang
