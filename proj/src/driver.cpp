#include "fxlang/driver.hpp"

#include <type_traits>

#include "fxlang/compile.hpp"
#include "fxlang/interp.hpp"
#include "fxlang/parser.hpp"

namespace fxlang {

std::optional<Semantics> semantics_from_name(std::string_view name) {
    if (name == "int") return Semantics::DeskInt;
    if (name == "env") return Semantics::Env;
    if (name == "eff") return Semantics::Eff;
    if (name == "wasm") return Semantics::Wasm;
    if (name == "wasm-no-alloc") return Semantics::WasmNoAlloc;
    return std::nullopt;
}

namespace {

template <class Sem>
ProgramResult result_of(ParseSession<Sem>& session) {
    ProgramResult r;
    try {
        auto obs = session.result();
        r.ok = true;
        if constexpr (std::is_same_v<decltype(obs), wasm::Module>)
            r.module = std::move(obs);
        else
            r.value = obs;
    } catch (const LangError& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

template <class Sem, class... Args>
ProgramResult run_one(std::string_view source, EventLog& log, Args&&... args) {
    Sem sem(log, std::forward<Args>(args)...);
    TokenSource ts(log);
    ParseSession<Sem> session(sem, ts);
    session.feed(source);
    session.finish();
    ProgramResult r = result_of(session);
    if (!r.ok) log.error_reported(r.error);
    return r;
}

}  // namespace

ProgramResult run_source(std::string_view source, Semantics sem, EventLog& log) {
    switch (sem) {
        case Semantics::DeskInt: return run_one<DeskSemantics>(source, log);
        case Semantics::Env: return run_one<EnvSemantics>(source, log);
        case Semantics::Eff: return run_one<EffSemantics>(source, log);
        case Semantics::Wasm: return run_one<CompileSemantics>(source, log, true);
        case Semantics::WasmNoAlloc: return run_one<CompileSemantics>(source, log, false);
    }
    return {};
}

struct Repl::Impl {
    virtual ~Impl() = default;
    virtual std::vector<ProgramResult> feed_line(std::string_view line) = 0;
    virtual std::vector<ProgramResult> finish() = 0;
};

namespace {

template <class Sem, bool WithFlag>
struct ReplImpl final : Repl::Impl {
    EventLog& log;
    bool flag;
    TokenSource ts;
    std::optional<Sem> sem;
    std::optional<ParseSession<Sem>> session;
    std::size_t consumed_at_start = 0;
    bool exhausted = false;

    ReplImpl(EventLog& log, bool flag) : log(log), flag(flag), ts(log) { fresh(); }

    void fresh() {
        session.reset();
        consumed_at_start = ts.consumed_count();
        if constexpr (WithFlag)
            sem.emplace(log, flag);
        else
            sem.emplace(log);
        session.emplace(*sem, ts);
    }

    // Collect every program that completes with the input available now.
    std::vector<ProgramResult> drain() {
        std::vector<ProgramResult> out;
        while (!exhausted && session->done()) {
            ProgramResult r = result_of(*session);
            // An empty trailing program (stream closed with nothing but
            // whitespace left) is not an error.
            bool empty_trailing =
                !r.ok && ts.buffer().closed() && ts.consumed_count() == consumed_at_start;
            if (!r.ok && !empty_trailing) log.error_reported(r.error);
            if (!empty_trailing) out.push_back(std::move(r));
            ts.recover(/*drop_pending_input=*/!r.ok);
            if (ts.at_stream_end()) {
                exhausted = true;
                break;
            }
            fresh();
            ts.pump();
        }
        return out;
    }

    std::vector<ProgramResult> feed_line(std::string_view line) override {
        if (exhausted) return {};
        std::string with_newline(line);
        with_newline += '\n';
        session->feed(with_newline);
        return drain();
    }

    std::vector<ProgramResult> finish() override {
        if (exhausted) return {};
        session->finish();
        return drain();
    }
};

}  // namespace

Repl::Repl(Semantics sem, EventLog& log) {
    switch (sem) {
        case Semantics::DeskInt: impl_ = std::make_unique<ReplImpl<DeskSemantics, false>>(log, false); break;
        case Semantics::Env: impl_ = std::make_unique<ReplImpl<EnvSemantics, false>>(log, false); break;
        case Semantics::Eff: impl_ = std::make_unique<ReplImpl<EffSemantics, false>>(log, false); break;
        case Semantics::Wasm: impl_ = std::make_unique<ReplImpl<CompileSemantics, true>>(log, true); break;
        case Semantics::WasmNoAlloc:
            impl_ = std::make_unique<ReplImpl<CompileSemantics, true>>(log, false);
            break;
    }
}

Repl::~Repl() = default;

std::vector<ProgramResult> Repl::feed_line(std::string_view line) { return impl_->feed_line(line); }
std::vector<ProgramResult> Repl::finish() { return impl_->finish(); }

}  // namespace fxlang
