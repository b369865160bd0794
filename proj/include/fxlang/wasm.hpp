#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fxlang/errors.hpp"

namespace fxlang::wasm {

// A per-function storage slot. Symbolic slots are placeholders created
// during compilation and renamed to `t_k` once allocation has run; Param
// slots are the function's arguments, addressed by index.
struct LocalSym {
    enum class Kind { Symbolic, Param, Resolved };
    Kind kind = Kind::Symbolic;
    int id = 0;         // Symbolic: binder id; Param: argument index
    std::string name;   // Resolved: "t_k"

    static LocalSym symbolic(int binder_id) { return {Kind::Symbolic, binder_id, {}}; }
    static LocalSym param(int index) { return {Kind::Param, index, {}}; }
    static LocalSym resolved(std::string n) { return {Kind::Resolved, 0, std::move(n)}; }

    bool operator==(const LocalSym&) const = default;
};

struct Instr {
    enum class Op { I32Const, I32Add, LocalGet, LocalSet, Call, Hole };
    Op op = Op::I32Add;
    std::int32_t value = 0;   // I32Const
    LocalSym local;           // LocalGet / LocalSet
    std::string symbol;       // Call: function symbol; Hole: hole name
};

inline Instr i32_const(std::int32_t n) { return {Instr::Op::I32Const, n, {}, {}}; }
inline Instr i32_add() { return {Instr::Op::I32Add, 0, {}, {}}; }
inline Instr local_get(LocalSym s) { return {Instr::Op::LocalGet, 0, std::move(s), {}}; }
inline Instr local_set(LocalSym s) { return {Instr::Op::LocalSet, 0, std::move(s), {}}; }
inline Instr call(std::string sym) { return {Instr::Op::Call, 0, {}, std::move(sym)}; }
inline Instr hole(std::string var) { return {Instr::Op::Hole, 0, {}, std::move(var)}; }

using Frag = std::vector<Instr>;

// x ++ y ++ [tail]
Frag concat2(Frag x, const Frag& y, Instr tail);

// Replace every Hole(var) in `f` with the whole replacement sequence.
Frag substitute(const Frag& f, const std::string& var, const Frag& replacement);

// Replace every Hole(var) in `f` with LocalGet(sym).
Frag fill_local(const Frag& f, const std::string& var, const LocalSym& sym);

bool contains_hole(const Frag& f, const std::string& var);

struct Function {
    std::optional<std::string> export_name;
    std::string symbol;           // wat name, e.g. "f_1" (empty for start)
    int params = 0;               // i32 params
    std::vector<std::string> locals;  // resolved "t_k" names
    Frag body;
};

struct Module {
    std::vector<Function> functions;  // start (export "start") comes last
};

// Render a single instruction in flat text form ("i32.const 3", ...).
// Holes and unresolved locals are rejected.
std::string render_instr(const Instr& i);

// Flat rendering of a fragment, single-space separated. Holes render as
// `?<name>` and symbolic locals as `$s<k>`; only used for traces.
std::string render_frag(const Frag& f);

// Canonical .wat text for the module.
std::string emit(const Module& m);

// Reference executor over the subset semantics. Locals start at 0.
std::int32_t execute(const Module& m);

// Abstract interpretation of every function body: the stack never
// underflows, ends with exactly one i32, and no t-local is read before
// it is set. Throws EmitError on violation.
void check_stack_safety(const Module& m);

// Whitespace/paren-insensitive token sequence, for comparing emitted
// text against expected listings.
std::vector<std::string> tokenize_wat(const std::string& text);

}  // namespace fxlang::wasm
