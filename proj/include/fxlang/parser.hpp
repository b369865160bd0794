#pragma once

#include <coroutine>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fxlang/errors.hpp"
#include "fxlang/events.hpp"
#include "fxlang/lexer.hpp"
#include "fxlang/token.hpp"

namespace fxlang {

// Coroutine task for parser productions. Lazily started; awaiting a child
// production transfers control to it and resumes the parent when it
// finishes. A production suspends only when the token source runs dry,
// which is how the parser stays resumable across REPL lines.
template <class T>
class [[nodiscard]] Parse {
public:
    struct promise_type {
        std::optional<T> value;
        std::exception_ptr error;
        std::coroutine_handle<> continuation;

        Parse get_return_object() {
            return Parse(std::coroutine_handle<promise_type>::from_promise(*this));
        }
        std::suspend_always initial_suspend() noexcept { return {}; }
        struct FinalAwaiter {
            bool await_ready() noexcept { return false; }
            std::coroutine_handle<> await_suspend(std::coroutine_handle<promise_type> h) noexcept {
                auto cont = h.promise().continuation;
                return cont ? cont : std::noop_coroutine();
            }
            void await_resume() noexcept {}
        };
        FinalAwaiter final_suspend() noexcept { return {}; }
        void return_value(T v) { value.emplace(std::move(v)); }
        void unhandled_exception() { error = std::current_exception(); }
    };

    using Handle = std::coroutine_handle<promise_type>;

    Parse() = default;
    explicit Parse(Handle h) : h_(h) {}
    Parse(Parse&& o) noexcept : h_(std::exchange(o.h_, {})) {}
    Parse& operator=(Parse&& o) noexcept {
        if (this != &o) {
            if (h_) h_.destroy();
            h_ = std::exchange(o.h_, {});
        }
        return *this;
    }
    Parse(const Parse&) = delete;
    Parse& operator=(const Parse&) = delete;
    ~Parse() {
        if (h_) h_.destroy();
    }

    void start() { h_.resume(); }
    bool done() const { return h_ && h_.done(); }

    T result() {
        if (h_.promise().error) std::rethrow_exception(h_.promise().error);
        return std::move(*h_.promise().value);
    }

    bool await_ready() const noexcept { return false; }
    std::coroutine_handle<> await_suspend(std::coroutine_handle<> cont) noexcept {
        h_.promise().continuation = cont;
        return h_;
    }
    T await_resume() { return result(); }

private:
    Handle h_;
};

// One-token-lookahead source over the pull lexer. Peeking never emits an
// event; consuming a token records TokenConsumed. When no complete token
// is available, the awaiting production suspends until more input is fed.
class TokenSource {
public:
    explicit TokenSource(EventLog& log) : log_(&log) {}

    CharBuffer& buffer() { return lexer_.buffer(); }

    bool ready() {
        if (ahead_ || pending_error_) return true;
        Token t;
        switch (lexer_.pull(t)) {
            case PullStatus::Ready:
                ahead_ = t;
                return true;
            case PullStatus::Error:
                pending_error_ = std::make_exception_ptr(lexer_.error());
                return true;
            case PullStatus::NeedMore:
                return false;
        }
        return false;
    }

    Token peek_now() {
        if (pending_error_) std::rethrow_exception(pending_error_);
        return *ahead_;
    }

    Token take_now() {
        if (pending_error_) std::rethrow_exception(pending_error_);
        Token t = *ahead_;
        ahead_.reset();
        ++consumed_;
        log_->token_consumed(t);
        return t;
    }

    std::size_t consumed_count() const { return consumed_; }

    // True once the closed stream has nothing left but end-of-input.
    bool at_stream_end() {
        if (!lexer_.buffer().closed()) return false;
        if (pending_error_) return false;
        return ready() && !pending_error_ && ahead_ && ahead_->kind == TokenKind::Eof;
    }

    struct PeekAwaiter {
        TokenSource& src;
        bool await_ready() { return src.ready(); }
        void await_suspend(std::coroutine_handle<> h) { src.blocked_ = h; }
        Token await_resume() { return src.peek_now(); }
    };
    struct NextAwaiter {
        TokenSource& src;
        bool await_ready() { return src.ready(); }
        void await_suspend(std::coroutine_handle<> h) { src.blocked_ = h; }
        Token await_resume() { return src.take_now(); }
    };

    PeekAwaiter peek() { return {*this}; }
    NextAwaiter next() { return {*this}; }

    // Resume a production blocked on input, if the input now suffices.
    void pump() {
        while (blocked_ && ready()) {
            auto h = std::exchange(blocked_, {});
            h.resume();
        }
    }

    void clear_blocked() { blocked_ = {}; }
    bool blocked() const { return static_cast<bool>(blocked_); }

    // Prepare for the next program on the same stream. On error the
    // poisoned program's pending input is discarded.
    void recover(bool drop_pending_input) {
        ahead_.reset();
        pending_error_ = nullptr;
        blocked_ = {};
        if (drop_pending_input) lexer_.buffer().discard_pending();
    }

private:
    Lexer lexer_;
    EventLog* log_;
    std::optional<Token> ahead_;
    std::exception_ptr pending_error_;
    std::coroutine_handle<> blocked_;
    std::size_t consumed_ = 0;
};

// Recursive-descent parser, generic over the semantics back-end. Actions
// fire as soon as their production closes: at most one token of lookahead
// is consumed past a completed production.
//
// program := fundecl* exp EOF
// fundecl := LET FUN IDENT ( params ) = exp IN
// exp     := term (PLUS term)*            -- left-associative
// term    := INT | IDENT | IDENT ( args ) | ( exp )
//          | LET IDENT = exp IN exp
//          | LET FUN IDENT ( params ) = exp IN exp
template <class Sem>
class Parser {
public:
    using Repr = typename Sem::Repr;
    using FunDecl = typename Sem::FunDecl;
    using Defns = typename Sem::Defns;
    using Obs = typename Sem::Obs;

    Parser(Sem& sem, TokenSource& ts) : sem_(sem), ts_(ts) {}

    Parse<Obs> program() {
        Defns defns = sem_.defn_empty();
        std::optional<Repr> body;
        for (;;) {
            Token t = co_await ts_.peek();
            if (t.kind == TokenKind::Let) {
                co_await ts_.next();
                Token t2 = co_await ts_.peek();
                if (t2.kind == TokenKind::Fun) {
                    co_await ts_.next();
                    FunDecl fd = co_await fundecl_tail();
                    defns = sem_.defn_add(std::move(defns), std::move(fd));
                    continue;
                }
                Repr first = co_await let_tail();
                body.emplace(co_await expression_cont(std::move(first)));
                break;
            }
            body.emplace(co_await expression());
            break;
        }
        Token eof = co_await ts_.peek();
        if (eof.kind != TokenKind::Eof)
            throw ParseError("Expected end of program but got " + describe(eof), eof.pos);
        co_await ts_.next();
        co_return sem_.topf_observe(sem_.top_exp(std::move(defns), std::move(*body)));
    }

private:
    Parse<Token> expect(TokenKind k, const char* what) {
        Token t = co_await ts_.peek();
        if (t.kind != k)
            throw ParseError(std::string("Expected ") + what + " but got " + describe(t), t.pos);
        co_await ts_.next();
        co_return t;
    }

    Parse<Repr> expression() {
        Repr first = co_await term();
        co_return co_await expression_cont(std::move(first));
    }

    Parse<Repr> expression_cont(Repr first) {
        Repr acc = std::move(first);
        for (;;) {
            Token t = co_await ts_.peek();
            if (t.kind != TokenKind::Plus) break;
            co_await ts_.next();
            Repr rhs = co_await term();
            acc = sem_.add(std::move(acc), std::move(rhs));
        }
        co_return acc;
    }

    Parse<Repr> term() {
        Token t = co_await ts_.peek();
        switch (t.kind) {
            case TokenKind::Int:
                co_await ts_.next();
                co_return sem_.int_(t.value);
            case TokenKind::Ident: {
                co_await ts_.next();
                Token la = co_await ts_.peek();
                if (la.kind == TokenKind::LParen) {
                    co_await ts_.next();
                    std::vector<Repr> args;
                    Token t2 = co_await ts_.peek();
                    if (t2.kind != TokenKind::RParen) {
                        for (;;) {
                            args.push_back(co_await expression());
                            Token sep = co_await ts_.peek();
                            if (sep.kind == TokenKind::Comma) {
                                co_await ts_.next();
                                continue;
                            }
                            break;
                        }
                    }
                    co_await expect(TokenKind::RParen, "')'");
                    co_return sem_.call(t.text, std::move(args));
                }
                co_return sem_.var_(t.text);
            }
            case TokenKind::LParen: {
                co_await ts_.next();
                Repr e = co_await expression();
                co_await expect(TokenKind::RParen, "')'");
                co_return e;
            }
            case TokenKind::Let: {
                co_await ts_.next();
                Token la = co_await ts_.peek();
                if (la.kind == TokenKind::Fun) {
                    co_await ts_.next();
                    co_return co_await funlet_tail();
                }
                co_return co_await let_tail();
            }
            default:
                throw ParseError("Unexpected token " + describe(t), t.pos);
        }
    }

    // After LET (no FUN): IDENT = exp IN exp
    Parse<Repr> let_tail() {
        Token name = co_await expect(TokenKind::Ident, "identifier");
        co_await expect(TokenKind::Eq, "'='");
        Repr bound = co_await expression();
        co_await expect(TokenKind::In, "'in'");
        Repr body = co_await expression();
        co_return sem_.let_(name.text, std::move(bound), std::move(body));
    }

    // After LET FUN: IDENT ( params ) = exp IN   -- declaration action
    // fires right after IN, before anything following is parsed.
    Parse<FunDecl> fundecl_tail() {
        Token name = co_await expect(TokenKind::Ident, "identifier");
        co_await expect(TokenKind::LParen, "'('");
        std::vector<std::string> params;
        Token t = co_await ts_.peek();
        if (t.kind != TokenKind::RParen) {
            for (;;) {
                Token p = co_await expect(TokenKind::Ident, "parameter name");
                params.push_back(p.text);
                Token sep = co_await ts_.peek();
                if (sep.kind == TokenKind::Comma) {
                    co_await ts_.next();
                    continue;
                }
                break;
            }
        }
        co_await expect(TokenKind::RParen, "')'");
        co_await expect(TokenKind::Eq, "'='");
        Repr body = co_await expression();
        co_await expect(TokenKind::In, "'in'");
        co_return sem_.defun(name.text, std::move(params), std::move(body));
    }

    Parse<Repr> funlet_tail() {
        FunDecl fd = co_await fundecl_tail();
        Repr rest = co_await expression();
        co_return sem_.funlet(std::move(fd), std::move(rest));
    }

    Sem& sem_;
    TokenSource& ts_;
};

// A single program being parsed incrementally. Feed characters as they
// arrive; `done()` flips once the program's observation has been made
// (or an error occurred).
template <class Sem>
class ParseSession {
public:
    using Obs = typename Sem::Obs;

    ParseSession(Sem& sem, TokenSource& ts) : ts_(ts), parser_(sem, ts), root_(parser_.program()) {
        root_.start();
    }
    ~ParseSession() { ts_.clear_blocked(); }

    void feed(std::string_view chars) {
        ts_.buffer().append(chars);
        ts_.pump();
    }
    void finish() {
        ts_.buffer().close();
        ts_.pump();
    }

    bool done() const { return root_.done(); }
    Obs result() { return root_.result(); }

private:
    TokenSource& ts_;
    Parser<Sem> parser_;
    Parse<Obs> root_;
};

}  // namespace fxlang
