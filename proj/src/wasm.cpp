#include "fxlang/wasm.hpp"

#include <map>
#include <set>
#include <sstream>

namespace fxlang::wasm {

Frag concat2(Frag x, const Frag& y, Instr tail) {
    x.reserve(x.size() + y.size() + 1);
    x.insert(x.end(), y.begin(), y.end());
    x.push_back(std::move(tail));
    return x;
}

Frag substitute(const Frag& f, const std::string& var, const Frag& replacement) {
    Frag out;
    out.reserve(f.size());
    for (const Instr& i : f) {
        if (i.op == Instr::Op::Hole && i.symbol == var)
            out.insert(out.end(), replacement.begin(), replacement.end());
        else
            out.push_back(i);
    }
    return out;
}

Frag fill_local(const Frag& f, const std::string& var, const LocalSym& sym) {
    Frag out;
    out.reserve(f.size());
    for (const Instr& i : f) {
        if (i.op == Instr::Op::Hole && i.symbol == var)
            out.push_back(local_get(sym));
        else
            out.push_back(i);
    }
    return out;
}

bool contains_hole(const Frag& f, const std::string& var) {
    for (const Instr& i : f)
        if (i.op == Instr::Op::Hole && i.symbol == var) return true;
    return false;
}

namespace {

std::string render_local(const LocalSym& s, bool strict) {
    switch (s.kind) {
        case LocalSym::Kind::Resolved: return "$" + s.name;
        case LocalSym::Kind::Param: return std::to_string(s.id);
        case LocalSym::Kind::Symbolic:
            if (strict) throw EmitError("unresolved symbolic local in emitted code");
            return "$s" + std::to_string(s.id);
    }
    return "?";
}

std::string render(const Instr& i, bool strict) {
    switch (i.op) {
        case Instr::Op::I32Const: return "i32.const " + std::to_string(i.value);
        case Instr::Op::I32Add: return "i32.add";
        case Instr::Op::LocalGet: return "local.get " + render_local(i.local, strict);
        case Instr::Op::LocalSet: return "local.set " + render_local(i.local, strict);
        case Instr::Op::Call: return "call $" + i.symbol;
        case Instr::Op::Hole:
            if (strict) throw EmitError("hole " + i.symbol + " in emitted code");
            return "?" + i.symbol;
    }
    return "?";
}

}  // namespace

std::string render_instr(const Instr& i) { return render(i, true); }

std::string render_frag(const Frag& f) {
    std::string out;
    for (const Instr& i : f) {
        if (!out.empty()) out += ' ';
        out += render(i, false);
    }
    return out;
}

std::string emit(const Module& m) {
    std::ostringstream out;
    out << "(module";
    for (const Function& fn : m.functions) {
        out << "\n  (func";
        if (!fn.symbol.empty()) out << " $" << fn.symbol;
        if (fn.export_name) out << " (export \"" << *fn.export_name << "\")";
        for (int i = 0; i < fn.params; ++i) out << " (param i32)";
        out << " (result i32)";
        for (const std::string& l : fn.locals) out << " (local $" << l << " i32)";
        for (const Instr& i : fn.body) out << "\n    " << render(i, true);
        out << ")";
    }
    out << ")\n";
    return out.str();
}

namespace {

const Function& find_function(const Module& m, const std::string& symbol) {
    for (const Function& f : m.functions)
        if (f.symbol == symbol) return f;
    throw TrapError("call to unknown function $" + symbol);
}

const Function& start_function(const Module& m) {
    for (const Function& f : m.functions)
        if (f.export_name && *f.export_name == "start") return f;
    throw TrapError("module has no start export");
}

std::int32_t run(const Module& m, const Function& fn, std::vector<std::int32_t> args) {
    std::map<std::string, std::int32_t> locals;  // t-locals, zero-initialized
    std::vector<std::int32_t> stack;

    auto pop = [&stack]() {
        if (stack.empty()) throw TrapError("stack underflow");
        std::int32_t v = stack.back();
        stack.pop_back();
        return v;
    };
    auto local_value = [&](const LocalSym& s) -> std::int32_t& {
        switch (s.kind) {
            case LocalSym::Kind::Param: {
                if (s.id < 0 || s.id >= static_cast<int>(args.size()))
                    throw TrapError("parameter index out of range");
                return args[s.id];
            }
            case LocalSym::Kind::Resolved:
                return locals[s.name];
            case LocalSym::Kind::Symbolic:
                throw TrapError("unresolved local at run time");
        }
        throw TrapError("bad local");
    };

    for (const Instr& i : fn.body) {
        switch (i.op) {
            case Instr::Op::I32Const:
                stack.push_back(i.value);
                break;
            case Instr::Op::I32Add: {
                std::int32_t b = pop();
                std::int32_t a = pop();
                stack.push_back(static_cast<std::int32_t>(
                    static_cast<std::uint32_t>(a) + static_cast<std::uint32_t>(b)));
                break;
            }
            case Instr::Op::LocalGet:
                stack.push_back(local_value(i.local));
                break;
            case Instr::Op::LocalSet:
                local_value(i.local) = pop();
                break;
            case Instr::Op::Call: {
                const Function& callee = find_function(m, i.symbol);
                std::vector<std::int32_t> call_args(callee.params);
                for (int k = callee.params - 1; k >= 0; --k) call_args[k] = pop();
                stack.push_back(run(m, callee, std::move(call_args)));
                break;
            }
            case Instr::Op::Hole:
                throw TrapError("hole " + i.symbol + " at run time");
        }
    }
    if (stack.size() != 1) throw TrapError("function left " + std::to_string(stack.size()) + " values on the stack");
    return stack.back();
}

}  // namespace

std::int32_t execute(const Module& m) { return run(m, start_function(m), {}); }

void check_stack_safety(const Module& m) {
    for (const Function& fn : m.functions) {
        int depth = 0;
        std::set<std::string> set_locals;
        for (const Instr& i : fn.body) {
            switch (i.op) {
                case Instr::Op::I32Const:
                    ++depth;
                    break;
                case Instr::Op::I32Add:
                    if (depth < 2) throw EmitError("stack underflow in " + fn.symbol);
                    --depth;
                    break;
                case Instr::Op::LocalGet:
                    if (i.local.kind == LocalSym::Kind::Resolved && !set_locals.count(i.local.name))
                        throw EmitError("local $" + i.local.name + " read before set in " + fn.symbol);
                    if (i.local.kind == LocalSym::Kind::Symbolic)
                        throw EmitError("unresolved local in " + fn.symbol);
                    ++depth;
                    break;
                case Instr::Op::LocalSet:
                    if (depth < 1) throw EmitError("stack underflow in " + fn.symbol);
                    if (i.local.kind == LocalSym::Kind::Resolved)
                        set_locals.insert(i.local.name);
                    else if (i.local.kind == LocalSym::Kind::Symbolic)
                        throw EmitError("unresolved local in " + fn.symbol);
                    --depth;
                    break;
                case Instr::Op::Call: {
                    const Function& callee = find_function(m, i.symbol);
                    if (depth < callee.params) throw EmitError("stack underflow in " + fn.symbol);
                    depth -= callee.params;
                    ++depth;
                    break;
                }
                case Instr::Op::Hole:
                    throw EmitError("hole " + i.symbol + " in " + fn.symbol);
            }
        }
        if (depth != 1)
            throw EmitError("body of " + (fn.symbol.empty() ? std::string("start") : fn.symbol) +
                            " has net stack effect " + std::to_string(depth));
    }
}

std::vector<std::string> tokenize_wat(const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : text) {
        if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

}  // namespace fxlang::wasm
