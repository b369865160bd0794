#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fxlang/denot.hpp"
#include "fxlang/errors.hpp"
#include "fxlang/events.hpp"
#include "fxlang/wasm.hpp"

namespace fxlang {

// Arity and unique emitted symbol of a declared function.
struct FunInfo {
    int arity = 0;
    std::string symbol;
};

// Answer domain for compiler denotations: either a code fragment or
// function metadata. Variable questions are answered with fragments,
// function questions with FunInfo; mixing the tags is a compiler bug.
class CodeVal {
public:
    CodeVal() : v_(wasm::Frag{}) {}
    explicit CodeVal(wasm::Frag f) : v_(std::move(f)) {}
    explicit CodeVal(FunInfo i) : v_(std::move(i)) {}

    bool is_frag() const { return v_.index() == 0; }
    const wasm::Frag& frag() const {
        if (!is_frag()) throw std::logic_error("CodeVal: expected code fragment, got function info");
        return std::get<0>(v_);
    }
    const FunInfo& fun() const {
        if (is_frag()) throw std::logic_error("CodeVal: expected function info, got code fragment");
        return std::get<1>(v_);
    }

private:
    std::variant<wasm::Frag, FunInfo> v_;
};

// One storage request: a binder whose variable is used more than once,
// together with the binders it conflicts with. Requests are recorded in
// handler-completion order (innermost first). The conflict set is read
// off the completed body fragment: every foreign hole (an enclosing
// binder still alive here) and every symbolic local already placed by an
// inner binder overlaps this binder's live range.
struct AllocRequest {
    int binder_id = 0;
    std::string name;
    std::vector<int> conflicts;
};

// Per-binder statistics, kept for every let regardless of whether it
// allocates. Exposed for the usage-analysis tests.
struct BinderStats {
    int binder_id = 0;
    std::string name;
    int use_count = 0;
};

class CompileSemantics {
public:
    using Repr = Denot<CodeVal>;

    struct FunDecl {
        int index = -1;
        std::string name;
        Repr pending;
    };
    using Defns = std::monostate;
    using Obs = wasm::Module;

    CompileSemantics(EventLog& log, bool allocate_locals)
        : log_(log), allocate_(allocate_locals) {}

    Repr int_(long long n);
    Repr add(Repr x, Repr y);
    Repr var_(std::string n) { return var<CodeVal>(var_name(std::move(n))); }
    Repr let_(std::string n, Repr bound, Repr body);
    Repr call(const std::string& name, std::vector<Repr> args);
    FunDecl defun(std::string name, std::vector<std::string> params, Repr body);
    Repr funlet(FunDecl fd, Repr rest);
    Defns defn_empty() { return {}; }
    Defns defn_add(Defns d, FunDecl fd);
    Obs top_exp(Defns, Repr body);
    Obs topf_observe(Obs m) { return m; }

    // Introspection for tests.
    const std::vector<AllocRequest>& ledger() const { return ledger_; }
    const std::vector<BinderStats>& binder_stats() const { return stats_; }
    const std::map<int, int>& assignment() const { return assignment_; }
    const wasm::Frag& start_frag_symbolic() const { return start_symbolic_; }

    // First-fit over request order: each binder gets the smallest t_k not
    // held by a conflicting, already-assigned binder.
    static std::map<int, int> run_allocation(const std::vector<AllocRequest>& ledger);

private:
    struct FunDef {
        std::string name;
        std::string symbol;
        int params = 0;
        wasm::Frag frag;
        bool defined = false;
    };

    Repr inline_let(const std::string& n, Repr bound, Repr body);
    Repr alloc_let(const std::string& n, Repr bound, Repr body);
    void substitute_in_functions(const std::string& hole_name, const wasm::Frag& replacement);
    std::optional<std::string> function_containing_hole(const std::string& hole_name) const;
    wasm::Module build_module(wasm::Frag start_body);

    EventLog& log_;
    bool allocate_;
    std::vector<FunDef> funcs_;
    std::map<std::string, int> table_;  // source name -> latest funcs_ index
    std::map<std::string, int> symbol_counters_;
    int binder_counter_ = 0;
    std::vector<AllocRequest> ledger_;
    std::vector<BinderStats> stats_;
    std::map<int, int> assignment_;
    wasm::Frag start_symbolic_;
};

}  // namespace fxlang
