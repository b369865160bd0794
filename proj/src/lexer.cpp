#include "fxlang/lexer.hpp"

#include <cctype>

namespace fxlang {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

PullStatus Lexer::pull(Token& out) {
    auto mark = buf_.mark();

    while (!buf_.at_end() && is_space(buf_.peek())) buf_.take();
    if (buf_.at_end()) {
        if (!buf_.closed()) return need_more(mark);
        out = Token{TokenKind::Eof, 0, "", buf_.pos()};
        return PullStatus::Ready;
    }

    SourcePos start = buf_.pos();
    char c = buf_.peek();

    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (!buf_.at_end() && std::isdigit(static_cast<unsigned char>(buf_.peek())))
            text += buf_.take();
        if (buf_.at_end() && !buf_.closed()) return need_more(mark);
        // A digit run glued to identifier characters is not a number.
        if (!buf_.at_end() && is_ident_start(buf_.peek())) {
            while (!buf_.at_end() && is_ident_char(buf_.peek())) text += buf_.take();
            if (buf_.at_end() && !buf_.closed()) return need_more(mark);
            return fail("Invalid literal " + text, start);
        }
        out = Token{TokenKind::Int, std::stoll(text), "", start};
        return PullStatus::Ready;
    }

    if (is_ident_start(c)) {
        std::string text;
        while (!buf_.at_end() && is_ident_char(buf_.peek())) text += buf_.take();
        if (buf_.at_end() && !buf_.closed()) return need_more(mark);
        TokenKind kind = TokenKind::Ident;
        if (text == "let") kind = TokenKind::Let;
        else if (text == "fun") kind = TokenKind::Fun;
        else if (text == "in") kind = TokenKind::In;
        out = Token{kind, 0, text, start};
        return PullStatus::Ready;
    }

    switch (c) {
        case '+': buf_.take(); out = Token{TokenKind::Plus, 0, "", start}; return PullStatus::Ready;
        case '(': buf_.take(); out = Token{TokenKind::LParen, 0, "", start}; return PullStatus::Ready;
        case ')': buf_.take(); out = Token{TokenKind::RParen, 0, "", start}; return PullStatus::Ready;
        case '=': buf_.take(); out = Token{TokenKind::Eq, 0, "", start}; return PullStatus::Ready;
        case ',': buf_.take(); out = Token{TokenKind::Comma, 0, "", start}; return PullStatus::Ready;
        case ';': {
            buf_.take();
            if (buf_.at_end()) {
                if (!buf_.closed()) return need_more(mark);
                return fail("Unexpected character ';'", start);
            }
            if (buf_.peek() == ';') {
                buf_.take();
                out = Token{TokenKind::Eof, 0, "", start};
                return PullStatus::Ready;
            }
            return fail("Unexpected character ';'", start);
        }
        default:
            return fail(std::string("Unexpected character '") + c + "'", start);
    }
}

}  // namespace fxlang
