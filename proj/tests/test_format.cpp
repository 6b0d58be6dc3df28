#include <doctest.h>

#include "helpers.hpp"
#include "orthokit/error.hpp"
#include "orthokit/format.hpp"
#include "orthokit/oracle.hpp"

using namespace orthokit;
using fx::pos;
using fx::tm;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::parse_error;
}

}  // namespace

TEST_CASE("parse_trs") {
    Trs e1 = parse_trs("(VAR x) (RULES f(x) -> g(x) a -> b)");
    REQUIRE(e1.size() == 2);
    CHECK(e1.rule(0).lhs == tm("f(x)"));
    CHECK(e1.rule(0).rhs == tm("g(x)"));
    CHECK(e1.rule(1).lhs == tm("a"));
    CHECK(e1.signature().arity("f") == 1u);
    CHECK(e1.signature().arity("a") == 0u);

    CHECK(kind_of([] { parse_trs("(VAR x) (RULES x -> a)"); }) == ErrorKind::var_as_lhs);
    CHECK(kind_of([] { parse_trs("(VAR x y) (RULES f(x) -> g(y))"); }) == ErrorKind::unbound_rhs_var);
    // an undeclared bare identifier is a constant
    CHECK(parse_trs("(VAR x) (RULES f(x) -> g(y))").rule(0).rhs == Term::apply("g", {Term::apply("y")}));
    CHECK(kind_of([] { parse_trs("(VAR x) (RULES f(x) -> f(x,x))"); }) == ErrorKind::arity_conflict);
    CHECK(kind_of([] { parse_trs("(VAR x) (RULES f(x) -> )"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { parse_trs("(VAR x) (THEORY (AC f)) (RULES f(x) -> x)"); }) ==
          ErrorKind::unsupported_section);
    CHECK(kind_of([] { parse_trs("(RULES a -> b) (VAR x)"); }) == ErrorKind::parse_error);
    CHECK_NOTHROW(parse_trs("(COMMENT from a problem set (nested)) (RULES a -> b)"));
}

TEST_CASE("errors carry line and column") {
    try {
        parse_trs("(VAR x)\n(RULES\n  f(x) -> g(x)\n  x -> a\n)\n");
        FAIL("expected var-as-lhs");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::var_as_lhs);
        CHECK(e.has_location());
        CHECK(e.line() == 4);
        CHECK(e.column() == 3);
    }
    try {
        parse_trs("(VAR x)\n(RULES f(x) -> g(x)\n  g(x,x) -> a)");
        FAIL("expected arity-conflict");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::arity_conflict);
        CHECK(e.line() == 3);
        CHECK(e.column() == 3);
    }
    try {
        parse_trs("(VAR x)\n(RULES f(x) => a)");
        FAIL("expected parse-error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse_error);
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("2:") != std::string::npos);
    }
}

TEST_CASE("parse_term") {
    Trs e1 = fx::e1();
    CHECK(parse_term("f(a)", e1.signature(), {}) == tm("f(a)"));
    CHECK(kind_of([&] { parse_term("f(a,b)", e1.signature(), {}); }) == ErrorKind::arity_mismatch);
    CHECK(parse_term("x", e1.signature(), {"x"}) == Term::variable("x"));
    CHECK(kind_of([&] { parse_term("q(a)", e1.signature(), {}); }) == ErrorKind::unknown_symbol);
    CHECK(kind_of([&] { parse_term("f(a", e1.signature(), {}); }) == ErrorKind::parse_error);
}

TEST_CASE("print_trs") {
    CHECK(print_trs(fx::e1()) == "(VAR x)\n(RULES\n  f(x) -> g(x)\n  a -> b\n)\n");
}

TEST_CASE("parse/print round trip on generated systems") {
    GenParams params;
    for (std::size_t i = 0; i < 500; ++i) {
        Rng rng = case_rng(8, i);
        Trs trs = gen_trs(params, rng);
        Trs back = parse_trs(print_trs(trs));
        REQUIRE(back.rules() == trs.rules());
        Term t = gen_subject(trs, params, rng);
        REQUIRE(parse_term(to_string(t), trs.signature(), {}) == t);
    }
}

TEST_CASE("steps") {
    Trs e1 = fx::e1();
    Term s = tm("h2(a,a)");
    ParallelStep st = parse_step("1:1,2:1", e1, s);
    CHECK(st.positions == PositionSeq{pos("1"), pos("2")});
    CHECK(print_step(st) == "1:1,2:1");
    CHECK(parse_step("", e1, s).empty());
    ParallelStep root = parse_step("e:0", e1, tm("f(a)"));
    CHECK(root.substs[0] == Substitution{{"x", tm("a")}});
    CHECK(kind_of([&] { parse_step("e:0", e1, s); }) == ErrorKind::invalid_step);
    CHECK(kind_of([&] { parse_step("1:1,1:1", e1, s); }) == ErrorKind::invalid_step);
    CHECK(kind_of([&] { parse_step("1-1", e1, s); }) == ErrorKind::parse_error);
}
