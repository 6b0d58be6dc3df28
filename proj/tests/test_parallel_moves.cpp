#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "orthokit/error.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"
#include "orthokit/parallel_moves.hpp"

using namespace orthokit;
using fx::pos;
using fx::tm;

namespace {

ParallelStep step_of(std::initializer_list<Redex> rs) { return ParallelStep::from_redexes(std::vector<Redex>(rs)); }

void check_witness(const Trs& trs, const JoinWitness& w) {
    REQUIRE(apply_parallel(trs, w.left_term, w.step_from_left) == w.join_term);
    REQUIRE(apply_parallel(trs, w.right_term, w.step_from_right) == w.join_term);
    auto from_left = bf::parallel_reducts(trs, w.left_term);
    auto from_right = bf::parallel_reducts(trs, w.right_term);
    REQUIRE(from_left);
    REQUIRE(from_right);
    REQUIRE(from_left->contains(w.join_term));
    REQUIRE(from_right->contains(w.join_term));
}

}  // namespace

TEST_CASE("sigma_update") {
    Substitution s{{"x", tm("g(a)")}};
    CHECK(sigma_update(s, "x", std::vector<Term>{tm("b")}, PositionSeq{pos("1")}) == Substitution{{"x", tm("g(b)")}});
    Substitution t{{"x", tm("a")}, {"y", tm("c")}};
    CHECK(sigma_update(t, "x", std::vector<Term>{}, PositionSeq{}) == t);
    CHECK(sigma_update(t, "x", std::vector<Term>{tm("b")}, PositionSeq{pos("e")}) ==
          Substitution{{"x", tm("b")}, {"y", tm("c")}});
    CHECK_THROWS_AS(sigma_update(s, "x", std::vector<Term>{tm("b")}, PositionSeq{pos("2")}), Error);
    CHECK_THROWS_AS(sigma_update(s, "x", std::vector<Term>{tm("b")}, PositionSeq{}), Error);
}

TEST_CASE("sigma_prime") {
    std::vector<std::string> xs{"x"};
    // nested one level inside the binding
    CHECK(sigma_prime(Substitution{{"x", tm("g(a)")}}, xs, PositionSeq{pos("1")}, std::vector<Term>{tm("b")},
                      PositionSeq{pos("1.1")}) == Substitution{{"x", tm("g(b)")}});
    // inner redex exactly at the variable position
    CHECK(sigma_prime(Substitution{{"x", tm("a")}}, xs, PositionSeq{pos("1")}, std::vector<Term>{tm("b")},
                      PositionSeq{pos("1")}) == Substitution{{"x", tm("b")}});
    // nothing below the variable
    Substitution sigma{{"x", tm("g(a)")}, {"y", tm("a")}};
    CHECK(sigma_prime(sigma, std::vector<std::string>{"x", "y"}, PositionSeq{pos("1"), pos("2")},
                      std::vector<Term>{tm("b")}, PositionSeq{pos("3")}) == sigma);
    try {
        sigma_prime(Substitution{{"x", tm("a")}}, xs, PositionSeq{pos("1")}, std::vector<Term>{tm("b")},
                    PositionSeq{pos("1.1")});
        FAIL("expected invalid-geometry");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_geometry);
    }
}

TEST_CASE("decompose_nested") {
    Trs e2 = fx::e2();
    Redex outer{pos("e"), 0, {{"x", tm("g(a)")}}};
    auto d = decompose_nested(e2, tm("f(g(a))"), outer, step_of({{pos("1.1"), 1, {}}}));
    REQUIRE(d.groups.size() == 1);
    CHECK(d.groups[0].var == "x");
    CHECK(d.groups[0].var_pos_in_lhs == pos("1"));
    REQUIRE(d.groups[0].entries.size() == 1);
    CHECK(d.groups[0].entries[0].suffix == pos("1"));
    CHECK(d.groups[0].entries[0].inner_rule == 1);
    CHECK(d.outer_pos.concat(d.groups[0].var_pos_in_lhs).concat(d.groups[0].entries[0].suffix) == pos("1.1"));

    Trs e1 = fx::e1();
    auto d1 = decompose_nested(e1, tm("f(a)"), Redex{pos("e"), 0, {{"x", tm("a")}}}, step_of({{pos("1"), 1, {}}}));
    REQUIRE(d1.groups.size() == 1);
    CHECK(d1.groups[0].var_pos_in_lhs == pos("1"));
    CHECK(d1.groups[0].entries[0].suffix.is_root());

    CHECK(decompose_nested(e1, tm("f(a)"), Redex{pos("e"), 0, {{"x", tm("a")}}}, ParallelStep{}).groups.empty());

    Trs nl = fx::trs("(VAR x) (RULES h(x,x) -> x a -> b)");
    try {
        decompose_nested(nl, tm("h(a,a)"), Redex{pos("e"), 0, {{"x", tm("a")}}}, step_of({{pos("1"), 1, {}}}));
        FAIL("expected precondition-violated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition_violated);
    }
    Trs overlap = fx::trs("(VAR x) (RULES f(g(x)) -> a g(b) -> c)");
    try {
        decompose_nested(overlap, tm("f(g(b))"), Redex{pos("e"), 0, {{"x", tm("b")}}}, step_of({{pos("1"), 1, {}}}));
        FAIL("expected overlap-violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::overlap_violation);
    }
}

TEST_CASE("join_parallel_divergence: E1") {
    Trs e1 = fx::e1();
    Term s = tm("f(a)");
    JoinWitness w =
        join_parallel_divergence(e1, s, step_of({{pos("e"), 0, {{"x", tm("a")}}}}), step_of({{pos("1"), 1, {}}}));
    CHECK(w.left_term == tm("g(a)"));
    CHECK(w.right_term == tm("f(b)"));
    CHECK(w.join_term == tm("g(b)"));
    CHECK(w.step_from_left == step_of({{pos("1"), 1, {}}}));
    CHECK(w.step_from_right == step_of({{pos("e"), 0, {{"x", tm("b")}}}}));
    check_witness(e1, w);
}

TEST_CASE("join_parallel_divergence: duplicating rhs") {
    Trs e2 = fx::e2();
    Term s = tm("f(a)");
    JoinWitness w =
        join_parallel_divergence(e2, s, step_of({{pos("e"), 0, {{"x", tm("a")}}}}), step_of({{pos("1"), 1, {}}}));
    CHECK(w.left_term == tm("h(a,a)"));
    CHECK(w.join_term == tm("h(b,b)"));
    CHECK(w.step_from_left.sorted().positions == PositionSeq{pos("1"), pos("2")});
    CHECK(w.step_from_right == step_of({{pos("e"), 0, {{"x", tm("b")}}}}));
    check_witness(e2, w);

    // the same divergence with the sides swapped
    JoinWitness v =
        join_parallel_divergence(e2, s, step_of({{pos("1"), 1, {}}}), step_of({{pos("e"), 0, {{"x", tm("a")}}}}));
    CHECK(v.join_term == tm("h(b,b)"));
    check_witness(e2, v);
}

TEST_CASE("join_parallel_divergence: erasing rule") {
    Trs er = fx::trs("(VAR x y) (RULES k2(x,y) -> x a -> b)");
    Term s = tm("k2(a,a)");
    Redex outer{pos("e"), 0, {{"x", tm("a")}, {"y", tm("a")}}};
    JoinWitness w = join_parallel_divergence(er, s, step_of({outer}), step_of({{pos("2"), 1, {}}}));
    CHECK(w.left_term == tm("a"));
    CHECK(w.join_term == tm("a"));
    CHECK(w.step_from_left.empty());
    check_witness(er, w);

    JoinWitness both =
        join_parallel_divergence(er, s, step_of({outer}), step_of({{pos("1"), 1, {}}, {pos("2"), 1, {}}}));
    CHECK(both.join_term == tm("b"));
    CHECK(both.step_from_left.size() == 1);
    check_witness(er, both);
}

TEST_CASE("join_parallel_divergence: equal steps and errors") {
    Trs e1 = fx::e1();
    Term s = tm("h2(f(a),a)");
    ParallelStep st = step_of({{pos("1"), 0, {{"x", tm("a")}}}, {pos("2"), 1, {}}});
    JoinWitness w = join_parallel_divergence(e1, s, st, st);
    CHECK(w.left_term == w.right_term);
    CHECK(w.join_term == w.left_term);
    CHECK(w.step_from_left.empty());
    CHECK(w.step_from_right.empty());

    try {
        join_parallel_divergence(fx::trs("(RULES a -> b a -> c)"), tm("a"), ParallelStep{}, ParallelStep{});
        FAIL("expected not-orthogonal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_orthogonal);
    }
    try {
        join_parallel_divergence(e1, s, step_of({{pos("2"), 0, {}}}), ParallelStep{});
        FAIL("expected invalid-step");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_step);
    }
}

TEST_CASE("residual count law") {
    // outer rule duplicates, keeps, or erases its variable
    for (const auto& [rule_text, copies] : std::vector<std::pair<std::string, std::size_t>>{
             {"f(x) -> h(x,x)", 2}, {"f(x) -> g(x)", 1}, {"f(x) -> c", 0}}) {
        Trs trs = fx::trs("(VAR x) (RULES " + rule_text + " a -> b)");
        trs.signature().add("h", 2);
        trs.signature().add("g", 1);
        trs.signature().add("c", 0);
        Term s = tm("f(g(a))");
        JoinWitness w = join_parallel_divergence(trs, s, step_of({{pos("e"), 0, {{"x", tm("g(a)")}}}}),
                                                 step_of({{pos("1.1"), 1, {}}}));
        CHECK(w.step_from_left.size() == copies);
        CHECK(copies == pos_var(trs.rule(0).rhs, "x").size());
        check_witness(trs, w);
    }
}

TEST_CASE("diamond on random orthogonal systems") {
    GenParams params;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < 120; ++i) {
        Rng rng = case_rng(31, i);
        Trs trs = gen_orthogonal_trs(params, rng);
        REQUIRE(orthogonal(trs));
        Term s = gen_subject(trs, params, rng);
        std::vector<ParallelReduct> steps;
        try {
            steps = parallel_reducts_bounded(trs, s, 64);
        } catch (const Error&) {
            continue;
        }
        for (const ParallelReduct& l : steps) {
            for (const ParallelReduct& r : steps) {
                JoinWitness w = join_parallel_divergence(trs, s, l.step, r.step);
                REQUIRE(w.left_term == l.result);
                REQUIRE(w.right_term == r.result);
                REQUIRE(apply_parallel(trs, w.left_term, w.step_from_left) == w.join_term);
                REQUIRE(apply_parallel(trs, w.right_term, w.step_from_right) == w.join_term);
                ++pairs;
            }
        }
    }
    CHECK(pairs > 500);
}

TEST_CASE("triangle_join") {
    Trs e1 = fx::e1();
    Term s = tm("f(a)");
    Redex outer{pos("e"), 0, {{"x", tm("a")}}};
    Redex inner{pos("1"), 1, {}};
    TriangleJoin j = triangle_join(e1, s, outer, inner);
    CHECK(j.left_term == tm("g(a)"));
    CHECK(j.right_term == tm("f(b)"));
    CHECK(j.join_term == tm("g(b)"));
    REQUIRE(j.step_from_left);
    CHECK(j.step_from_left->position == pos("1"));
    REQUIRE(j.step_from_right);
    CHECK(j.step_from_right->position == pos("e"));

    TriangleJoin same = triangle_join(e1, s, outer, outer);
    CHECK(same.join_term == same.left_term);
    CHECK(same.join_term == same.right_term);
    CHECK_FALSE(same.step_from_left);
    CHECK_FALSE(same.step_from_right);

    TriangleJoin par = triangle_join(e1, tm("h2(a,a)"), Redex{pos("1"), 1, {}}, Redex{pos("2"), 1, {}});
    CHECK(par.join_term == tm("h2(b,b)"));
    CHECK(par.step_from_left);
    CHECK(par.step_from_right);

    try {
        triangle_join(fx::e2(), s, outer, inner);
        FAIL("expected precondition-violated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition_violated);
    }
}
