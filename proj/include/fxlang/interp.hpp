#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fxlang/denot.hpp"
#include "fxlang/errors.hpp"
#include "fxlang/events.hpp"

namespace fxlang {

// Desk calculator: the domain is the value itself, so every addition
// computes (and reports) the moment its operands are parsed. Identifiers
// are rejected at the var action.
class DeskSemantics {
public:
    using Repr = long long;
    struct FunDecl {};
    struct Defns {};
    using Obs = long long;

    explicit DeskSemantics(EventLog& log) : log_(log) {}

    Repr int_(long long n) { return n; }
    Repr add(Repr x, Repr y) {
        long long s = x + y;
        log_.intermediate(s);
        return s;
    }
    Repr var_(const std::string& n) {
        throw UnboundNameError("Variable " + n + " is unbound");
    }
    Repr let_(const std::string&, Repr, Repr body) { return body; }
    Repr call(const std::string&, std::vector<Repr>) {
        throw UnsupportedError("int semantics does not support functions");
    }
    FunDecl defun(const std::string&, std::vector<std::string>, Repr) {
        throw UnsupportedError("int semantics does not support functions");
    }
    Repr funlet(FunDecl, Repr rest) { return rest; }
    Defns defn_empty() { return {}; }
    Defns defn_add(Defns d, FunDecl) { return d; }
    Repr top_exp(Defns, Repr body) { return body; }
    Obs topf_observe(Repr r) { return r; }

private:
    EventLog& log_;
};

// Environment semantics: the meaning of an expression is a function from
// the environment. Nothing computes until the whole program is observed.
class EnvSemantics {
public:
    using Env = std::vector<std::pair<std::string, long long>>;  // innermost last
    using Repr = std::function<long long(const Env&)>;
    struct FunDecl {};
    struct Defns {};
    using Obs = long long;

    explicit EnvSemantics(EventLog& log) : log_(log) {}

    Repr int_(long long n) {
        return [n](const Env&) { return n; };
    }
    Repr add(Repr x, Repr y) {
        EventLog* log = &log_;
        return [x, y, log](const Env& env) {
            long long s = x(env) + y(env);
            log->intermediate(s);
            return s;
        };
    }
    Repr var_(std::string n) {
        return [n = std::move(n)](const Env& env) -> long long {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == n) return it->second;
            throw UnboundNameError("Variable " + n + " is unbound");
        };
    }
    Repr let_(std::string n, Repr bound, Repr body) {
        return [n = std::move(n), bound, body](const Env& env) {
            Env inner = env;
            inner.emplace_back(n, bound(env));
            return body(inner);
        };
    }
    Repr call(const std::string&, std::vector<Repr>) {
        throw UnsupportedError("env semantics does not support functions");
    }
    FunDecl defun(const std::string&, std::vector<std::string>, Repr) {
        throw UnsupportedError("env semantics does not support functions");
    }
    Repr funlet(FunDecl, Repr rest) { return rest; }
    Defns defn_empty() { return {}; }
    Defns defn_add(Defns d, FunDecl) { return d; }
    Repr top_exp(Defns, Repr body) { return body; }
    Obs topf_observe(Repr r) { return r(Env{}); }

private:
    EventLog& log_;
};

// Effect semantics: the meaning is a question/answer denotation. Closed
// subexpressions compute during parsing; variable occurrences become
// questions answered by the enclosing let handlers.
class EffSemantics {
public:
    using Repr = Denot<long long>;

    struct FunEntry {
        std::vector<std::string> params;
        Repr body;
        // Definition-site values for the body's free variables, filled
        // in as the enclosing handlers answer the declaration's
        // questions.
        std::map<std::string, long long> captured;
        explicit FunEntry(std::vector<std::string> ps, Repr b)
            : params(std::move(ps)), body(std::move(b)) {}
    };

    struct FunDecl {
        std::string name;
        std::shared_ptr<FunEntry> entry;
        std::vector<std::string> free_names;
    };
    using Defns = std::vector<FunDecl>;
    using Obs = long long;

    explicit EffSemantics(EventLog& log) : log_(log) {}

    Repr int_(long long n) { return ans(n); }
    Repr add(Repr x, Repr y);
    Repr var_(std::string n) { return var<long long>(var_name(std::move(n))); }
    Repr let_(std::string n, Repr bound, Repr body);
    Repr call(const std::string& name, std::vector<Repr> args);
    FunDecl defun(std::string name, std::vector<std::string> params, Repr body);
    Repr funlet(FunDecl fd, Repr rest);
    Defns defn_empty() { return {}; }
    Defns defn_add(Defns d, FunDecl fd) {
        d.push_back(std::move(fd));
        return d;
    }
    Repr top_exp(Defns defns, Repr body);
    Obs topf_observe(Repr r) { return top_hand(std::move(r)); }

private:
    Repr invoke(const std::shared_ptr<FunEntry>& entry, std::vector<long long> args);
    std::vector<std::string> discover_free_names(const Repr& body,
                                                 const std::vector<std::string>& params);

    EventLog& log_;
    std::map<std::string, std::shared_ptr<FunEntry>> table_;  // latest declaration wins
};

}  // namespace fxlang
