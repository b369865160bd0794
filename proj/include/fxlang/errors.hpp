#pragma once

#include <stdexcept>
#include <string>

namespace fxlang {

struct SourcePos {
    int line = 1;
    int column = 1;
    bool operator==(const SourcePos&) const = default;
};

inline std::string to_string(const SourcePos& p) {
    return std::to_string(p.line) + ":" + std::to_string(p.column);
}

// Base for all user-visible failures. `what()` is the exact one-line
// message the CLI prints.
class LangError : public std::runtime_error {
public:
    LangError(std::string msg, SourcePos pos = {})
        : std::runtime_error(std::move(msg)), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

class LexError : public LangError {
public:
    using LangError::LangError;
};

class ParseError : public LangError {
public:
    using LangError::LangError;
};

class UnboundNameError : public LangError {
public:
    using LangError::LangError;
};

class ArityError : public LangError {
public:
    using LangError::LangError;
};

class OpenFunctionBodyError : public LangError {
public:
    using LangError::LangError;
};

class EmitError : public LangError {
public:
    using LangError::LangError;
};

class TrapError : public LangError {
public:
    using LangError::LangError;
};

class UnsupportedError : public LangError {
public:
    using LangError::LangError;
};

}  // namespace fxlang
