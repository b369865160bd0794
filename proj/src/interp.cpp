#include "fxlang/interp.hpp"

#include <algorithm>
#include <set>

namespace fxlang {

namespace {

// Folds arguments left to right, then hands the collected values on.
Denot<long long> collect_args(std::vector<Denot<long long>> args, std::size_t i,
                              std::vector<long long> vals,
                              std::function<Denot<long long>(std::vector<long long>)> fin) {
    if (i == args.size()) return fin(std::move(vals));
    Denot<long long> cur = args[i];
    return lift<long long>(
        [args = std::move(args), i, vals = std::move(vals), fin = std::move(fin)](long long v) {
            auto vs = vals;
            vs.push_back(v);
            return collect_args(args, i + 1, std::move(vs), fin);
        },
        std::move(cur));
}

}  // namespace

EffSemantics::Repr EffSemantics::add(Repr x, Repr y) {
    EventLog* log = &log_;
    return lift2<long long>(
        [log](long long a, long long b) {
            long long s = a + b;
            log->intermediate(s);
            return s;
        },
        std::move(x), std::move(y));
}

EffSemantics::Repr EffSemantics::let_(std::string n, Repr bound, Repr body) {
    QName q = var_name(std::move(n));
    return lift<long long>(
        [q, body = std::move(body)](long long v) { return letv(q, v, body); },
        std::move(bound));
}

EffSemantics::Repr EffSemantics::call(const std::string& name, std::vector<Repr> args) {
    auto it = table_.find(name);
    if (it == table_.end()) throw UnboundNameError("Function " + name + " is unbound");
    std::shared_ptr<FunEntry> entry = it->second;
    if (entry->params.size() != args.size())
        throw ArityError("Function " + name + " requires " + std::to_string(entry->params.size()) +
                         " arguments but was invoked with " + std::to_string(args.size()));

    // The invocation is deferred behind a function-namespace question so
    // that it runs in the scope of the declaration's handler, after the
    // definition-site captures have been answered.
    EffSemantics* self = this;
    QName fq = fun_name(name);
    return collect_args(std::move(args), 0, {}, [self, entry, fq](std::vector<long long> vals) {
        return Denot<long long>::question(fq, [self, entry, vals](long long) {
            return self->invoke(entry, vals);
        });
    });
}

EffSemantics::Repr EffSemantics::invoke(const std::shared_ptr<FunEntry>& entry,
                                        std::vector<long long> args) {
    Repr d = entry->body;
    const std::vector<std::string>& params = entry->params;
    d = handle<long long>(
        [](long long v) { return ans(v); },
        [params, args](const QName& q) -> std::optional<long long> {
            if (q.ns != NameSpace::Var) return std::nullopt;
            for (std::size_t i = 0; i < params.size(); ++i)
                if (params[i] == q.name) return args[i];
            return std::nullopt;
        },
        std::move(d));
    d = handle<long long>(
        [](long long v) { return ans(v); },
        [entry](const QName& q) -> std::optional<long long> {
            if (q.ns != NameSpace::Var) return std::nullopt;
            auto it = entry->captured.find(q.name);
            if (it == entry->captured.end()) return std::nullopt;
            return it->second;
        },
        std::move(d));
    return d;
}

std::vector<std::string> EffSemantics::discover_free_names(
    const Repr& body, const std::vector<std::string>& params) {
    // Replay the body answering every question with a dummy value. The
    // language has no branching, so the question sequence does not
    // depend on the answers.
    EventLog::MuteGuard mute(log_);
    std::vector<std::string> free;
    std::set<std::string> seen;
    Repr cur = body;
    while (!cur.is_answer()) {
        const QName& q = cur.name();
        if (q.ns == NameSpace::Var && !seen.count(q.name) &&
            std::find(params.begin(), params.end(), q.name) == params.end()) {
            free.push_back(q.name);
            seen.insert(q.name);
        }
        cur = cur.resume(0);
    }
    return free;
}

EffSemantics::FunDecl EffSemantics::defun(std::string name, std::vector<std::string> params,
                                          Repr body) {
    auto entry = std::make_shared<FunEntry>(std::move(params), std::move(body));
    std::vector<std::string> free = discover_free_names(entry->body, entry->params);
    table_[name] = entry;
    return FunDecl{std::move(name), std::move(entry), std::move(free)};
}

EffSemantics::Repr EffSemantics::funlet(FunDecl fd, Repr rest) {
    // Innermost layer: answer calls of this function, deferring their
    // invocation until the surrounding captures are complete.
    std::string name = fd.name;
    std::function<Repr()> make = [name, rest = std::move(rest)]() {
        return handle<long long>(
            [](long long v) { return ans(v); },
            [name](const QName& q) -> std::optional<long long> {
                if (q.ns == NameSpace::Fun && q.name == name) return 0;
                return std::nullopt;
            },
            rest);
    };
    // Ask for the body's free variables at the definition site, filling
    // the entry's captured bindings as the enclosing handlers answer.
    for (auto it = fd.free_names.rbegin(); it != fd.free_names.rend(); ++it) {
        std::string n = *it;
        auto entry = fd.entry;
        std::function<Repr()> next = std::move(make);
        make = [entry, n = std::move(n), next = std::move(next)]() {
            return Denot<long long>::question(var_name(n), [entry, n, next](long long v) {
                entry->captured[n] = v;
                return next();
            });
        };
    }
    return make();
}

EffSemantics::Repr EffSemantics::top_exp(Defns defns, Repr body) {
    Repr acc = std::move(body);
    for (auto it = defns.rbegin(); it != defns.rend(); ++it) acc = funlet(*it, std::move(acc));
    return acc;
}

}  // namespace fxlang
