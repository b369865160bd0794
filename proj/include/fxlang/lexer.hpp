#pragma once

#include <optional>
#include <string>

#include "fxlang/errors.hpp"
#include "fxlang/token.hpp"

namespace fxlang {

// Growable character stream. `append` feeds more input (REPL lines),
// `close` marks true end of input.
class CharBuffer {
public:
    void append(std::string_view chars) { data_.append(chars); }
    void close() { closed_ = true; }
    bool closed() const { return closed_; }

    // Drop unconsumed input (error recovery in the REPL).
    void discard_pending() { pos_ = data_.size(); }

    bool at_end() const { return pos_ >= data_.size(); }
    char peek() const { return data_[pos_]; }
    char take() {
        char c = data_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    SourcePos pos() const { return {line_, column_}; }

    struct Mark {
        std::size_t pos;
        int line;
        int column;
    };
    Mark mark() const { return {pos_, line_, column_}; }
    void rewind(Mark m) {
        pos_ = m.pos;
        line_ = m.line;
        column_ = m.column;
    }

private:
    std::string data_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    bool closed_ = false;
};

enum class PullStatus {
    Ready,     // a token was produced
    NeedMore,  // not enough characters yet; feed more or close
    Error,     // lexical error, see `error()`
};

// Pull-based lexer with one character of lookahead. A token attempt that
// runs off the end of an unclosed buffer rewinds and reports NeedMore;
// tokens are tiny, so re-scanning is cheap. `;;` lexes as EOF, ending the
// current program; pulling may continue afterwards for the next one.
class Lexer {
public:
    CharBuffer& buffer() { return buf_; }

    PullStatus pull(Token& out);
    const LexError& error() const { return *error_; }

private:
    PullStatus need_more(CharBuffer::Mark m) {
        buf_.rewind(m);
        return PullStatus::NeedMore;
    }
    PullStatus fail(std::string msg, SourcePos at) {
        error_.emplace(std::move(msg), at);
        return PullStatus::Error;
    }

    CharBuffer buf_;
    std::optional<LexError> error_;
};

}  // namespace fxlang
