#include "fxlang/compile.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace fxlang {

using wasm::Frag;

namespace {

Denot<CodeVal> collect_frags(std::vector<Denot<CodeVal>> args, std::size_t i,
                             std::vector<Frag> vals,
                             std::function<Denot<CodeVal>(std::vector<Frag>)> fin) {
    if (i == args.size()) return fin(std::move(vals));
    Denot<CodeVal> cur = args[i];
    return lift<CodeVal>(
        [args = std::move(args), i, vals = std::move(vals), fin = std::move(fin)](CodeVal v) {
            auto vs = vals;
            vs.push_back(v.frag());
            return collect_frags(args, i + 1, std::move(vs), fin);
        },
        std::move(cur));
}

std::string hole_display_name(const std::string& hole_name) {
    auto at = hole_name.find('%');
    return at == std::string::npos ? hole_name : hole_name.substr(0, at);
}

int hole_binder_id(const std::string& hole_name) {
    auto at = hole_name.find('%');
    return at == std::string::npos ? 0 : std::stoi(hole_name.substr(at + 1));
}

// Binders whose storage overlaps the live range of the binder owning
// `body` (whose occurrences are holes named `own_hole`). The binder is
// live from just before `body` starts until its last hole. An enclosing
// binder whose hole appears anywhere in `body` is set earlier and read
// here, so it always overlaps. An inner binder that already placed its
// symbolic local overlaps only if it is set before our last use.
std::vector<int> conflicting_binders(const Frag& body, const std::string& own_hole) {
    std::size_t last_own = 0;
    for (std::size_t pos = 0; pos < body.size(); ++pos)
        if (body[pos].op == wasm::Instr::Op::Hole && body[pos].symbol == own_hole) last_own = pos;
    std::set<int> ids;
    std::map<int, std::size_t> first_sym;
    for (std::size_t pos = 0; pos < body.size(); ++pos) {
        const wasm::Instr& i = body[pos];
        if (i.op == wasm::Instr::Op::Hole) {
            if (i.symbol != own_hole) ids.insert(hole_binder_id(i.symbol));
        } else if ((i.op == wasm::Instr::Op::LocalGet || i.op == wasm::Instr::Op::LocalSet) &&
                   i.local.kind == wasm::LocalSym::Kind::Symbolic) {
            first_sym.try_emplace(i.local.id, pos);
        }
    }
    for (const auto& [id, first] : first_sym)
        if (first < last_own) ids.insert(id);
    return {ids.begin(), ids.end()};
}

}  // namespace

CompileSemantics::Repr CompileSemantics::int_(long long n) {
    return ans(CodeVal{Frag{wasm::i32_const(static_cast<std::int32_t>(n))}});
}

CompileSemantics::Repr CompileSemantics::add(Repr x, Repr y) {
    EventLog* log = &log_;
    return lift2<CodeVal>(
        [log](CodeVal a, CodeVal b) {
            Frag f = wasm::concat2(a.frag(), b.frag(), wasm::i32_add());
            log->code_emitted(wasm::render_frag(f));
            return CodeVal{std::move(f)};
        },
        std::move(x), std::move(y));
}

CompileSemantics::Repr CompileSemantics::let_(std::string n, Repr bound, Repr body) {
    if (allocate_) return alloc_let(n, std::move(bound), std::move(body));
    return inline_let(n, std::move(bound), std::move(body));
}

// Substitution semantics: the bound fragment is spliced into every
// occurrence; the let-binding gets inlined.
CompileSemantics::Repr CompileSemantics::inline_let(const std::string& n, Repr bound, Repr body) {
    QName q = var_name(n);
    return lift<CodeVal>(
        [q, body = std::move(body)](CodeVal v) { return letv(q, v, body); },
        std::move(bound));
}

// Allocating semantics: questions about the bound variable are answered
// with named holes and counted. Once the body is compiled the count
// decides: drop the bound expression, inline it, or allocate a local.
CompileSemantics::Repr CompileSemantics::alloc_let(const std::string& n, Repr bound, Repr body) {
    int id = ++binder_counter_;
    std::string hole_name = n + "%" + std::to_string(id);

    auto st = std::make_shared<int>(0);  // use count

    auto lookup = [n, hole_name, st](const QName& q) -> std::optional<CodeVal> {
        if (q.ns != NameSpace::Var) return std::nullopt;
        if (q.name == n) {
            ++*st;
            return CodeVal{Frag{wasm::hole(hole_name)}};
        }
        return std::nullopt;
    };

    CompileSemantics* self = this;
    auto ret = [self, id, n, hole_name, st, bound = std::move(bound)](CodeVal res) -> Repr {
        self->stats_.push_back(BinderStats{id, n, *st});
        if (*st == 0) {
            // The body never asked: compile the bound expression (its
            // questions must still reach the enclosing handlers) but
            // discard its code entirely.
            return lift<CodeVal>(
                [res = std::move(res)](CodeVal) { return ans(res); }, bound);
        }
        Frag body_frag = res.frag();
        if (*st == 1) {
            return lift<CodeVal>(
                [self, hole_name, body_frag = std::move(body_frag)](CodeVal bv) {
                    const Frag& bf = bv.frag();
                    self->substitute_in_functions(hole_name, bf);
                    return ans(CodeVal{wasm::substitute(body_frag, hole_name, bf)});
                },
                bound);
        }
        self->ledger_.push_back(AllocRequest{id, n, conflicting_binders(body_frag, hole_name)});
        return lift<CodeVal>(
            [self, id, n, hole_name, body_frag = std::move(body_frag)](CodeVal bv) {
                if (auto fn = self->function_containing_hole(hole_name))
                    throw OpenFunctionBodyError("Function " + *fn + " has a free variable " + n);
                Frag out = bv.frag();
                out.push_back(wasm::local_set(wasm::LocalSym::symbolic(id)));
                Frag filled = wasm::fill_local(body_frag, hole_name, wasm::LocalSym::symbolic(id));
                out.insert(out.end(), filled.begin(), filled.end());
                return ans(CodeVal{std::move(out)});
            },
            bound);
    };

    return handle<CodeVal>(std::move(ret), std::move(lookup), std::move(body));
}

CompileSemantics::Repr CompileSemantics::call(const std::string& name, std::vector<Repr> args) {
    EventLog* log = &log_;
    std::size_t nargs = args.size();
    QName fq = fun_name(name);
    return collect_frags(std::move(args), 0, {},
                         [log, name, nargs, fq](std::vector<Frag> vals) {
                             return Denot<CodeVal>::question(fq, [log, name, nargs, vals](CodeVal fv) {
                                 const FunInfo& info = fv.fun();
                                 if (info.arity != static_cast<int>(nargs))
                                     throw ArityError("Function " + name + " requires " +
                                                      std::to_string(info.arity) +
                                                      " arguments but was invoked with " +
                                                      std::to_string(nargs));
                                 Frag out;
                                 for (const Frag& f : vals) out.insert(out.end(), f.begin(), f.end());
                                 out.push_back(wasm::call(info.symbol));
                                 log->code_emitted(wasm::render_frag(out));
                                 return ans(CodeVal{std::move(out)});
                             });
                         });
}

CompileSemantics::FunDecl CompileSemantics::defun(std::string name,
                                                  std::vector<std::string> params, Repr body) {
    int index = static_cast<int>(funcs_.size());
    std::string symbol = name + "_" + std::to_string(++symbol_counters_[name]);
    funcs_.push_back(FunDef{name, symbol, static_cast<int>(params.size()), {}, false});

    // Parameters are binders bound to argument slots.
    Repr d = std::move(body);
    for (std::size_t i = 0; i < params.size(); ++i) {
        std::string p = params[i];
        wasm::LocalSym slot = wasm::LocalSym::param(static_cast<int>(i));
        d = handle<CodeVal>(
            [](CodeVal v) { return ans(std::move(v)); },
            [p, slot](const QName& q) -> std::optional<CodeVal> {
                if (q.ns == NameSpace::Var && q.name == p)
                    return CodeVal{Frag{wasm::local_get(slot)}};
                return std::nullopt;
            },
            std::move(d));
    }
    // Calls inside the body resolve against the functions declared so
    // far; the table is snapshotted so later redeclarations cannot leak
    // in when outer questions resume.
    std::map<std::string, int> snapshot = table_;
    std::vector<FunDef>* funcs = &funcs_;
    d = handle<CodeVal>(
        [](CodeVal v) { return ans(std::move(v)); },
        [snapshot, funcs](const QName& q) -> std::optional<CodeVal> {
            if (q.ns != NameSpace::Fun) return std::nullopt;
            auto it = snapshot.find(q.name);
            if (it == snapshot.end()) return std::nullopt;
            const FunDef& def = (*funcs)[it->second];
            return CodeVal{FunInfo{def.params, def.symbol}};
        },
        std::move(d));
    table_[name] = index;
    return FunDecl{index, std::move(name), std::move(d)};
}

CompileSemantics::Repr CompileSemantics::funlet(FunDecl fd, Repr rest) {
    CompileSemantics* self = this;
    int index = fd.index;
    std::string name = fd.name;
    return lift<CodeVal>(
        [self, index, name, rest = std::move(rest)](CodeVal cv) {
            FunDef& def = self->funcs_[index];
            def.frag = cv.frag();
            def.defined = true;
            FunInfo info{def.params, def.symbol};
            return handle<CodeVal>(
                [](CodeVal v) { return ans(std::move(v)); },
                [name, info](const QName& q) -> std::optional<CodeVal> {
                    if (q.ns == NameSpace::Fun && q.name == name) return CodeVal{info};
                    return std::nullopt;
                },
                rest);
        },
        std::move(fd.pending));
}

CompileSemantics::Defns CompileSemantics::defn_add(Defns d, FunDecl fd) {
    // Top-level declarations must be closed: any surviving variable
    // question is a free variable of the body.
    if (!fd.pending.is_answer()) {
        const QName& q = fd.pending.name();
        if (q.ns == NameSpace::Var)
            throw OpenFunctionBodyError("Function " + fd.name + " has a free variable " + q.name);
        throw UnboundNameError(unbound_message(q));
    }
    FunDef& def = funcs_[fd.index];
    def.frag = std::move(fd.pending).take_value().frag();
    def.defined = true;
    return d;
}

CompileSemantics::Obs CompileSemantics::top_exp(Defns, Repr body) {
    std::vector<FunDef>* funcs = &funcs_;
    std::map<std::string, int> snapshot = table_;
    Repr d = handle<CodeVal>(
        [](CodeVal v) { return ans(std::move(v)); },
        [snapshot, funcs](const QName& q) -> std::optional<CodeVal> {
            if (q.ns != NameSpace::Fun) return std::nullopt;
            auto it = snapshot.find(q.name);
            if (it == snapshot.end()) return std::nullopt;
            const FunDef& def = (*funcs)[it->second];
            return CodeVal{FunInfo{def.params, def.symbol}};
        },
        std::move(body));
    CodeVal cv = top_hand(std::move(d));
    return build_module(cv.frag());
}

void CompileSemantics::substitute_in_functions(const std::string& hole_name,
                                               const wasm::Frag& replacement) {
    for (FunDef& def : funcs_)
        if (def.defined && wasm::contains_hole(def.frag, hole_name))
            def.frag = wasm::substitute(def.frag, hole_name, replacement);
}

std::optional<std::string> CompileSemantics::function_containing_hole(
    const std::string& hole_name) const {
    for (const FunDef& def : funcs_)
        if (def.defined && wasm::contains_hole(def.frag, hole_name)) return def.name;
    return std::nullopt;
}

std::map<int, int> CompileSemantics::run_allocation(const std::vector<AllocRequest>& ledger) {
    // Symmetric closure of the reported conflicts.
    std::map<int, std::set<int>> adj;
    for (const AllocRequest& r : ledger) {
        for (int c : r.conflicts) {
            adj[r.binder_id].insert(c);
            adj[c].insert(r.binder_id);
        }
    }
    std::map<int, int> assignment;
    for (const AllocRequest& r : ledger) {
        std::set<int> taken;
        for (int nb : adj[r.binder_id]) {
            auto it = assignment.find(nb);
            if (it != assignment.end()) taken.insert(it->second);
        }
        int k = 1;
        while (taken.count(k)) ++k;
        assignment[r.binder_id] = k;
    }
    return assignment;
}

wasm::Module CompileSemantics::build_module(Frag start_body) {
    start_symbolic_ = start_body;
    assignment_ = run_allocation(ledger_);

    auto resolve = [this](Frag& f, const std::string& where) {
        std::set<int> local_ks;
        for (wasm::Instr& i : f) {
            if (i.op == wasm::Instr::Op::Hole)
                throw OpenFunctionBodyError("Function " + where + " has a free variable " +
                                            hole_display_name(i.symbol));
            if ((i.op == wasm::Instr::Op::LocalGet || i.op == wasm::Instr::Op::LocalSet) &&
                i.local.kind == wasm::LocalSym::Kind::Symbolic) {
                auto it = assignment_.find(i.local.id);
                if (it == assignment_.end())
                    throw EmitError("local without allocation in " + where);
                i.local = wasm::LocalSym::resolved("t_" + std::to_string(it->second));
                local_ks.insert(it->second);
            }
        }
        std::vector<std::string> locals;
        for (int k : local_ks) locals.push_back("t_" + std::to_string(k));
        return locals;
    };

    wasm::Module m;
    for (FunDef& def : funcs_) {
        if (!def.defined) continue;  // declared inside discarded code
        Frag f = def.frag;
        std::vector<std::string> locals = resolve(f, def.name);
        m.functions.push_back(wasm::Function{std::nullopt, def.symbol, def.params,
                                             std::move(locals), std::move(f)});
    }
    std::vector<std::string> locals = resolve(start_body, "start");
    m.functions.push_back(
        wasm::Function{std::string("start"), "", 0, std::move(locals), std::move(start_body)});
    return m;
}

}  // namespace fxlang
