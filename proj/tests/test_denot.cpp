#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "fxlang/denot.hpp"

using namespace fxlang;

namespace {

using D = Denot<long long>;

long long plus(long long a, long long b) { return a + b; }

// Extensional view of a denotation: feed scripted answers to each
// question in order and record the transcript (question names asked,
// final value). Two denotations are equivalent iff transcripts agree for
// all scripts; for our small cases a handful of scripts is exhaustive
// enough because continuations are pure.
struct Transcript {
    std::vector<std::string> questions;
    long long value = 0;
    bool operator==(const Transcript&) const = default;
};

Transcript run_with(D d, const std::vector<long long>& script) {
    Transcript t;
    std::size_t i = 0;
    while (!d.is_answer()) {
        t.questions.push_back(d.name().name);
        long long v = i < script.size() ? script[i] : 0;
        ++i;
        d = d.resume(v);
    }
    t.value = d.value();
    return t;
}

bool equivalent(const D& a, const D& b) {
    std::vector<std::vector<long long>> scripts = {
        {}, {0, 0, 0, 0}, {1, 2, 3, 4}, {7, 7, 7, 7}, {-5, 11, 0, 2}, {100, -1, 42, 9}};
    for (const auto& s : scripts)
        if (run_with(a, s) != run_with(b, s)) return false;
    return true;
}

}  // namespace

TEST_CASE("answers and questions") {
    CHECK(ans<long long>(3).is_answer());
    CHECK(ans<long long>(3).value() == 3);
    CHECK(top_hand(ans<long long>(42)) == 42);

    D vx = var<long long>(var_name("x"));
    CHECK(!vx.is_answer());
    CHECK(vx.name().name == "x");
    CHECK(vx.resume(7).is_answer());
}

TEST_CASE("lift2 computes immediately on two answers") {
    D r = lift2(plus, ans<long long>(1), ans<long long>(2));
    REQUIRE(r.is_answer());
    CHECK(r.value() == 3);
}

TEST_CASE("lift2 surfaces left questions first") {
    D r = lift2(plus, var<long long>(var_name("x")), var<long long>(var_name("y")));
    Transcript t = run_with(r, {5, 10});
    CHECK(t.questions == std::vector<std::string>{"x", "y"});
    CHECK(t.value == 15);

    D half = lift2(plus, var<long long>(var_name("x")), ans<long long>(2));
    REQUIRE(!half.is_answer());
    D done = half.resume(5);
    REQUIRE(done.is_answer());
    CHECK(done.value() == 7);
}

TEST_CASE("letv answers only its own name") {
    D r1 = letv(var_name("x"), 7LL, var<long long>(var_name("x")));
    REQUIRE(r1.is_answer());
    CHECK(r1.value() == 7);

    D r2 = letv(var_name("x"), 7LL, var<long long>(var_name("y")));
    REQUIRE(!r2.is_answer());
    CHECK(r2.name().name == "y");

    D r3 = letv(var_name("x"), 7LL,
                lift2(plus, var<long long>(var_name("x")), ans<long long>(1)));
    REQUIRE(r3.is_answer());
    CHECK(r3.value() == 8);
}

TEST_CASE("inner binding shadows") {
    D r = letv(var_name("x"), 1LL, letv(var_name("x"), 2LL, var<long long>(var_name("x"))));
    REQUIRE(r.is_answer());
    CHECK(r.value() == 2);
}

TEST_CASE("handle re-wraps unanswered questions") {
    // Vacuous handler is extensionally identity.
    D e = lift2(plus, var<long long>(var_name("a")), var<long long>(var_name("b")));
    D h = handle<long long>([](long long v) { return ans(v); },
                            [](const QName&) { return std::optional<long long>{}; }, e);
    CHECK(equivalent(e, h));
}

TEST_CASE("instrumented lookup is consulted once per occurrence") {
    int consulted = 0;
    D e = lift2(plus, var<long long>(var_name("x")), var<long long>(var_name("x")));
    D r = handle<long long>(
        [](long long v) { return ans(v); },
        [&consulted](const QName& q) -> std::optional<long long> {
            if (q.name == "x") {
                ++consulted;
                return 7LL;
            }
            return std::nullopt;
        },
        e);
    REQUIRE(r.is_answer());
    CHECK(r.value() == 14);
    CHECK(consulted == 2);
}

TEST_CASE("top_hand errors name the unbound variable or function") {
    CHECK_THROWS_WITH(top_hand(var<long long>(var_name("x"))), "Variable x is unbound");
    CHECK_THROWS_WITH(top_hand(var<long long>(fun_name("g"))), "Function g is unbound");
    CHECK(top_hand(letv(var_name("x"), 3LL,
                        lift2(plus, var<long long>(var_name("x")),
                              var<long long>(var_name("x"))))) == 6);
}

TEST_CASE("namespaces never collide") {
    D e = var<long long>(fun_name("x"));
    D r = letv(var_name("x"), 9LL, e);
    CHECK(!r.is_answer());  // variable handler must not answer a function question
}

TEST_CASE("monad laws, extensionally") {
    auto f = [](long long v) { return lift2(plus, ans(v), var<long long>(var_name("y"))); };
    auto g = [](long long v) { return ans(v * 2); };

    std::vector<D> samples;
    samples.push_back(ans<long long>(5));
    samples.push_back(var<long long>(var_name("x")));
    samples.push_back(lift2(plus, var<long long>(var_name("x")), ans<long long>(1)));
    samples.push_back(lift2(plus, var<long long>(var_name("x")),
                            lift2(plus, var<long long>(var_name("y")),
                                  var<long long>(var_name("z")))));

    for (const D& e : samples) {
        // Right identity: bind(ans, e) == e.
        CHECK(equivalent(lift([](long long v) { return ans(v); }, e), e));
        // Associativity: bind(g, bind(f, e)) == bind(v -> bind(g, f v), e).
        D lhs = lift(g, lift(f, e));
        D rhs = lift([&](long long v) { return lift(g, f(v)); }, e);
        CHECK(equivalent(lhs, rhs));
    }
    // Left identity: bind(f, ans(v)) == f(v).
    CHECK(equivalent(lift(f, ans<long long>(3)), f(3)));
}

TEST_CASE("handle is iterative: deep question chains do not overflow") {
    const int n = 5000;
    D e = var<long long>(var_name("x"));
    for (int i = 0; i < n; ++i) e = lift2(plus, std::move(e), var<long long>(var_name("x")));
    D r = letv(var_name("x"), 1LL, std::move(e));
    REQUIRE(r.is_answer());
    CHECK(r.value() == n + 1);
}

TEST_CASE("resume is pure: same answers give the same behavior") {
    D e = lift2(plus, var<long long>(var_name("x")), var<long long>(var_name("y")));
    Transcript a = run_with(e, {3, 4});
    Transcript b = run_with(e, {3, 4});
    CHECK(a == b);
}
