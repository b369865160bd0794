#include <string>
#include <vector>

#include "doctest.h"
#include "fxlang/driver.hpp"
#include "fxlang/events.hpp"

using namespace fxlang;

namespace {

struct Outcome {
    ProgramResult result;
    std::vector<Event> events;
};

Outcome run(const std::string& src, Semantics sem) {
    EventLog log;
    ProgramResult r = run_source(src, sem, log);
    return {r, log.events()};
}

std::vector<long long> intermediates(const std::vector<Event>& evs) {
    std::vector<long long> out;
    for (const auto& e : evs)
        if (e.kind == Event::Kind::Intermediate) out.push_back(std::stoll(e.payload));
    return out;
}

int seq_of_token(const std::vector<Event>& evs, const std::string& payload) {
    for (const auto& e : evs)
        if (e.kind == Event::Kind::TokenConsumed && e.payload == payload) return e.seq;
    return -1;
}

}  // namespace

TEST_CASE("desk calculator: partial sums") {
    auto [r, evs] = run("1+2+3", Semantics::DeskInt);
    REQUIRE(r.ok);
    CHECK(r.value == 6);
    CHECK(intermediates(evs) == std::vector<long long>{3, 6});
}

TEST_CASE("desk calculator: plain literal emits nothing") {
    auto [r, evs] = run("7", Semantics::DeskInt);
    REQUIRE(r.ok);
    CHECK(r.value == 7);
    CHECK(intermediates(evs).empty());
}

TEST_CASE("desk calculator rejects identifiers") {
    auto [r, evs] = run("let x = 1 in x", Semantics::DeskInt);
    CHECK(!r.ok);
    CHECK(r.error == "Variable x is unbound");
}

TEST_CASE("env semantics: value and lazy timing") {
    auto [r, evs] = run("let x = 1+2 in x+x", Semantics::Env);
    REQUIRE(r.ok);
    CHECK(r.value == 6);
    // Nothing computes until observe: every Intermediate comes after the
    // EOF token has been consumed.
    int eof_seq = seq_of_token(evs, "EOF");
    REQUIRE(eof_seq > 0);
    for (const auto& e : evs)
        if (e.kind == Event::Kind::Intermediate) CHECK(e.seq > eof_seq);
    CHECK(intermediates(evs) == std::vector<long long>{3, 6});
}

TEST_CASE("env semantics: unbound variable fails at observe") {
    auto [r, evs] = run("(1+2)+x", Semantics::Env);
    CHECK(!r.ok);
    CHECK(r.error == "Variable x is unbound");
}

TEST_CASE("eff semantics: closed subexpressions compute during parsing") {
    auto [r, evs] = run("let x = 1+2 in x+x", Semantics::Eff);
    REQUIRE(r.ok);
    CHECK(r.value == 6);
    int eof_seq = seq_of_token(evs, "EOF");
    auto ints = intermediates(evs);
    REQUIRE(ints == std::vector<long long>{3, 6});
    // 1+2 closes long before the end of the program.
    int first_intermediate_seq = -1;
    for (const auto& e : evs)
        if (e.kind == Event::Kind::Intermediate) {
            first_intermediate_seq = e.seq;
            break;
        }
    CHECK(first_intermediate_seq < eof_seq);
}

TEST_CASE("eff and env agree on nested lets") {
    const std::string p = "let y = let x = 1 + 2 in x + x + 3 in y + 1";
    auto eff = run(p, Semantics::Eff);
    auto env = run(p, Semantics::Env);
    REQUIRE(eff.result.ok);
    REQUIRE(env.result.ok);
    CHECK(eff.result.value == 10);
    CHECK(env.result.value == 10);
    CHECK(intermediates(eff.events) == std::vector<long long>{3, 6, 9, 10});
}

TEST_CASE("desk and eff emit identical intermediates on variable-free programs") {
    for (const std::string p : {"1+2+3", "(4+5)+(6+7)", "1+(2+(3+4))", "9"}) {
        auto a = run(p, Semantics::DeskInt);
        auto b = run(p, Semantics::Eff);
        REQUIRE(a.result.ok);
        REQUIRE(b.result.ok);
        CHECK(a.result.value == b.result.value);
        CHECK(intermediates(a.events) == intermediates(b.events));
    }
}

TEST_CASE("lexical binding: rebinding does not affect a defined function") {
    auto r1 = run("let x = 1 in let fun f(y) = x + y in let x = 2 in f(2)", Semantics::Eff);
    REQUIRE(r1.result.ok);
    CHECK(r1.result.value == 3);

    auto r2 = run("let x = 1 in let fun f(y) = x + y in let fun g(x) = f(x) in g(2)",
                  Semantics::Eff);
    REQUIRE(r2.result.ok);
    CHECK(r2.result.value == 3);
}

TEST_CASE("function identity and arity") {
    auto r = run("let fun f(y) = y in f(5)", Semantics::Eff);
    REQUIRE(r.result.ok);
    CHECK(r.result.value == 5);

    auto bad = run("let fun f(x) = x + 2 in\nlet fun g(y) = f(y,1) + y in\ng(1)", Semantics::Eff);
    CHECK(!bad.result.ok);
    CHECK(bad.result.error == "Function f requires 1 arguments but was invoked with 2");
}

TEST_CASE("arity error fires before later lines are consumed") {
    EventLog log;
    Repl repl(Semantics::Eff, log);
    auto r1 = repl.feed_line("let fun f(x) = x + 2 in");
    CHECK(r1.empty());
    auto r2 = repl.feed_line("let fun g(y) = f(y,1) + y in");
    REQUIRE(r2.size() == 1);
    CHECK(!r2[0].ok);
    CHECK(r2[0].error == "Function f requires 1 arguments but was invoked with 2");
    // No token from a third line exists yet; the error event is last.
    int err_seq = -1;
    for (const auto& e : log.events())
        if (e.kind == Event::Kind::ErrorReported) err_seq = e.seq;
    REQUIRE(err_seq > 0);
    auto r3 = repl.feed_line("g(1);;");
    for (const auto& e : log.events())
        if (e.kind == Event::Kind::TokenConsumed) CHECK(e.seq != err_seq);
}

TEST_CASE("calling an undeclared function") {
    auto r = run("g(1)", Semantics::Eff);
    CHECK(!r.result.ok);
    CHECK(r.result.error == "Function g is unbound");
}

TEST_CASE("repl: partial sums appear line by line, eff vs env") {
    for (Semantics sem : {Semantics::Eff, Semantics::DeskInt}) {
        EventLog log;
        Repl repl(sem, log);
        repl.feed_line("1+2");
        CHECK(intermediates(log.events()) == std::vector<long long>{3});
        repl.feed_line("+3");
        CHECK(intermediates(log.events()) == std::vector<long long>{3, 6});
        repl.feed_line("+4");
        CHECK(intermediates(log.events()) == std::vector<long long>{3, 6, 10});
        auto done = repl.feed_line(";;");
        REQUIRE(done.size() == 1);
        CHECK(done[0].ok);
        CHECK(done[0].value == 10);
    }

    EventLog log;
    Repl repl(Semantics::Env, log);
    repl.feed_line("1+2");
    repl.feed_line("+3");
    repl.feed_line("+4");
    CHECK(intermediates(log.events()).empty());
    auto done = repl.feed_line(";;");
    REQUIRE(done.size() == 1);
    CHECK(done[0].value == 10);
    CHECK(intermediates(log.events()) == std::vector<long long>{3, 6, 10});
}

TEST_CASE("repl: error poisons the current program only") {
    EventLog log;
    Repl repl(Semantics::Eff, log);
    auto r1 = repl.feed_line("1XXX;;");
    REQUIRE(r1.size() == 1);
    CHECK(!r1[0].ok);
    CHECK(r1[0].error == "Invalid literal 1XXX");
    auto r2 = repl.feed_line("let x = 5 in x + x;;");
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].ok);
    CHECK(r2[0].value == 10);
    auto rest = repl.finish();
    CHECK(rest.empty());
}

TEST_CASE("repl: several programs on one line") {
    EventLog log;
    Repl repl(Semantics::DeskInt, log);
    auto rs = repl.feed_line("1+1;;2+2;;");
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].value == 2);
    CHECK(rs[1].value == 4);
}

TEST_CASE("eff: intermediate for a closed subexpression precedes later tokens") {
    EventLog log;
    Repl repl(Semantics::Eff, log);
    repl.feed_line("(1+2)");
    auto ints = intermediates(log.events());
    REQUIRE(ints == std::vector<long long>{3});
    repl.feed_line("+x");
    auto done = repl.finish();
    REQUIRE(done.size() == 1);
    CHECK(!done[0].ok);
    CHECK(done[0].error == "Variable x is unbound");
}
