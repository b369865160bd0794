#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fxlang/events.hpp"
#include "fxlang/wasm.hpp"

namespace fxlang {

enum class Semantics { DeskInt, Env, Eff, Wasm, WasmNoAlloc };

std::optional<Semantics> semantics_from_name(std::string_view name);

struct ProgramResult {
    bool ok = false;
    long long value = 0;                 // interpreter semantics
    std::optional<wasm::Module> module;  // wasm semantics
    std::string error;
};

// Parse and run one complete program (file mode).
ProgramResult run_source(std::string_view source, Semantics sem, EventLog& log);

// Line-fed REPL over a stream of programs separated by `;;`. Each
// program runs under a fresh back-end; an error poisons the current
// program, which is discarded together with any pending input.
class Repl {
public:
    Repl(Semantics sem, EventLog& log);
    ~Repl();
    Repl(const Repl&) = delete;
    Repl& operator=(const Repl&) = delete;

    // Feeds one input line (newline appended). Returns the programs that
    // completed during consumption, in order.
    std::vector<ProgramResult> feed_line(std::string_view line);
    // Ends the input stream, finishing any program in flight.
    std::vector<ProgramResult> finish();

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

}  // namespace fxlang
