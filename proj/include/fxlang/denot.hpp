#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "fxlang/errors.hpp"

namespace fxlang {

enum class NameSpace { Var, Fun };

// Question name. Variable and function questions live in separate name
// spaces and never collide.
struct QName {
    NameSpace ns = NameSpace::Var;
    std::string name;
    bool operator==(const QName&) const = default;
};

inline QName var_name(std::string n) { return {NameSpace::Var, std::move(n)}; }
inline QName fun_name(std::string n) { return {NameSpace::Fun, std::move(n)}; }

inline std::string unbound_message(const QName& q) {
    return (q.ns == NameSpace::Var ? "Variable " : "Function ") + q.name + " is unbound";
}

// Free-monad denotation over a single reader-shaped operation: either a
// final answer, or a named question with a pure continuation. Nodes are
// immutable and shared, so copying a denotation (which the combinators
// below do freely inside captures) is O(1) rather than a deep copy of
// the whole continuation chain.
template <class D>
class Denot {
public:
    using Resume = std::function<Denot(D)>;

    static Denot answer(D v) {
        return Denot(std::make_shared<const Node>(std::in_place_index<0>, std::move(v)));
    }
    static Denot question(QName n, Resume k) {
        return Denot(std::make_shared<const Node>(std::in_place_index<1>,
                                                  Q{std::move(n), std::move(k)}));
    }

    bool is_answer() const { return node_->index() == 0; }
    const D& value() const { return std::get<0>(*node_); }
    D take_value() && { return std::get<0>(*node_); }
    const QName& name() const { return std::get<1>(*node_).name; }
    Denot resume(D v) const { return std::get<1>(*node_).resume(std::move(v)); }

private:
    struct Q {
        QName name;
        Resume resume;
    };
    using Node = std::variant<D, Q>;

    explicit Denot(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

template <class D>
Denot<D> ans(D v) {
    return Denot<D>::answer(std::move(v));
}

template <class D>
Denot<D> var(QName n) {
    return Denot<D>::question(std::move(n), [](D v) { return ans(std::move(v)); });
}

// Binary lifting: if both operands are answers, the operation runs right
// away; otherwise the left operand's questions surface first.
template <class D, class Op>
Denot<D> lift2(Op op, Denot<D> e1, Denot<D> e2) {
    if (e1.is_answer() && e2.is_answer()) {
        D a = std::move(e1).take_value();
        D b = std::move(e2).take_value();
        return ans<D>(op(std::move(a), std::move(b)));
    }
    if (!e1.is_answer()) {
        return Denot<D>::question(e1.name(), [op, e1, e2](D v) {
            return lift2(op, e1.resume(std::move(v)), e2);
        });
    }
    return Denot<D>::question(e2.name(), [op, e1, e2](D v) {
        return lift2(op, e1, e2.resume(std::move(v)));
    });
}

// Monadic bind. f : D -> Denot<D>.
template <class D, class F>
Denot<D> lift(F f, Denot<D> e) {
    if (e.is_answer()) return f(std::move(e).take_value());
    return Denot<D>::question(e.name(), [f, e](D v) {
        return lift(f, e.resume(std::move(v)));
    });
}

// Fold over a denotation. `lookup` answers some questions; unanswered
// ones are re-wrapped so that later occurrences stay handled. Answered
// question chains are walked iteratively: depth is bounded by one frame
// regardless of the number of occurrences.
template <class D, class Ret, class Lookup>
Denot<D> handle(Ret ret, Lookup lookup, Denot<D> e) {
    for (;;) {
        if (e.is_answer()) return ret(std::move(e).take_value());
        std::optional<D> hit = lookup(e.name());
        if (!hit) {
            return Denot<D>::question(e.name(), [ret, lookup, e](D v) {
                return handle<D>(ret, lookup, e.resume(std::move(v)));
            });
        }
        e = e.resume(std::move(*hit));
    }
}

// Handler for a single binding: answers questions about `n` with `v`,
// propagating all others.
template <class D>
Denot<D> letv(QName n, D v, Denot<D> e) {
    return handle<D>(
        [](D r) { return ans(std::move(r)); },
        [n, v](const QName& q) -> std::optional<D> {
            if (q == n) return v;
            return std::nullopt;
        },
        std::move(e));
}

// Top-level handler: a surviving question means an unbound name.
template <class D>
D top_hand(Denot<D> e) {
    if (e.is_answer()) return std::move(e).take_value();
    throw UnboundNameError(unbound_message(e.name()));
}

}  // namespace fxlang
