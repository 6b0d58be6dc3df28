#include <doctest.h>

#include "helpers.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"

using namespace orthokit;

TEST_CASE("linearity predicates") {
    CHECK(left_linear(fx::e1()));
    CHECK_FALSE(left_linear(fx::trs("(VAR x) (RULES h(x,x) -> x)")));
    CHECK(left_linear(Trs{}));
    CHECK_FALSE(right_linear(fx::trs("(VAR x) (RULES f(x) -> h(x,x))")));
    CHECK(right_linear(fx::trs("(VAR x) (RULES f(x) -> g(x))")));
    CHECK(right_linear(fx::trs("(RULES a -> b)")));
    CHECK(linear_trs(fx::e1()));
    CHECK_FALSE(linear_trs(fx::trs("(VAR x) (RULES f(x) -> h(x,x))")));
    CHECK_FALSE(linear_trs(fx::trs("(VAR x) (RULES h(x,x) -> x)")));
}

TEST_CASE("ambiguity and orthogonality") {
    Trs amb = fx::trs("(RULES a -> b a -> c)");
    CHECK(ambiguous(amb));
    CHECK_FALSE(ambiguous(fx::e1()));
    CHECK_FALSE(ambiguous(fx::cl()));
    CHECK(orthogonal(fx::cl()));
    CHECK(orthogonal(fx::e2()));
    CHECK_FALSE(orthogonal(amb));
    CHECK(orthogonal(Trs{}));
}

TEST_CASE("analyze") {
    OrthoReport nl = analyze(fx::trs("(VAR x) (RULES h(x,x) -> x)"));
    CHECK_FALSE(nl.left_linear);
    REQUIRE(nl.offending_rules.size() == 1);
    CHECK(nl.offending_rules[0] == NonLinearOccurrence{0, "x", 2});

    OrthoReport e1 = analyze(fx::e1());
    CHECK(e1.orthogonal);
    CHECK(e1.critical_pair_count == 0);

    OrthoReport amb = analyze(fx::trs("(RULES a -> b a -> c)"));
    CHECK_FALSE(amb.orthogonal);
    CHECK(amb.critical_pair_count == 2);
    CHECK(amb.ambiguous);
    CHECK_FALSE(amb.all_cps_trivial);
}

TEST_CASE("sample_cps is capped") {
    // four rules with one lhs: 12 ordered overlaps
    OrthoReport r = analyze(fx::trs("(RULES a -> b a -> c a -> a a -> b)"));
    CHECK(r.critical_pair_count == 12);
    CHECK(r.sample_cps.size() == max_sample_cps);
}

TEST_CASE("report consistency and monotonicity on random systems") {
    GenParams params;
    for (std::size_t i = 0; i < 500; ++i) {
        Rng rng = case_rng(17, i);
        Trs trs = gen_trs(params, rng);
        OrthoReport r = analyze(trs);
        REQUIRE(r.linear == (r.left_linear && r.right_linear));
        REQUIRE(r.orthogonal == (r.left_linear && !r.ambiguous));
        REQUIRE(r.ambiguous == (r.critical_pair_count > 0));
        REQUIRE(r.left_linear == left_linear(trs));
        REQUIRE(r.right_linear == right_linear(trs));
        if (!ambiguous(trs)) {
            for (std::size_t k = 0; k < trs.size(); ++k) {
                REQUIRE_FALSE(ambiguous(trs.without_rule(k)));
            }
        }
    }
}
