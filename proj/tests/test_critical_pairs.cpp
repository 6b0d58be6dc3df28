#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "orthokit/critical_pairs.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"

using namespace orthokit;
using fx::pos;
using fx::tm;

namespace {

bool disjoint_vars(const Rule& a, const Rule& b) {
    std::set<std::string> va = vars(a.lhs), vb = vars(b.lhs);
    return std::none_of(va.begin(), va.end(), [&](const std::string& x) { return vb.contains(x); });
}

Term ground_with(const Term& t, const Term& c) {
    Substitution g;
    for (const std::string& x : vars(t)) {
        g.bind(x, c);
    }
    return apply_subst(g, t);
}

}  // namespace

TEST_CASE("rename_apart") {
    Rule e1{0, tm("f(x)"), tm("g(x)")};
    Rule e2{1, tm("a"), tm("b")};
    auto [r1, r2] = rename_apart(e1, e2);
    CHECK(r1.lhs == Term::apply("f", {Term::variable("x#0")}));
    CHECK(r1.rhs == Term::apply("g", {Term::variable("x#0")}));
    CHECK(r2.lhs == tm("a"));

    auto [p, q] = rename_apart(Rule{0, tm("f(x)"), tm("x")}, Rule{1, tm("g(x)"), tm("x")});
    CHECK(disjoint_vars(p, q));
    auto [s1, s2] = rename_apart(e1, e1);
    CHECK(disjoint_vars(s1, s2));
    CHECK(s1.lhs.symbol() == "f");
}

TEST_CASE("mgu examples") {
    CHECK(mgu(tm("f(x)"), tm("f(a)")) == Substitution{{"x", tm("a")}});
    CHECK_FALSE(mgu(tm("x"), tm("f(x)")));
    auto s = mgu(tm("h(x,b)"), tm("h(a,y)"));
    REQUIRE(s);
    CHECK(*s == Substitution{{"x", tm("a")}, {"y", tm("b")}});
    CHECK(apply_subst(*s, tm("h(x,b)")) == apply_subst(*s, tm("h(a,y)")));
    CHECK_FALSE(mgu(tm("f(a)"), tm("g(a)")));
    CHECK_FALSE(mgu(tm("h(x,x)"), tm("h(a,b)")));
}

TEST_CASE("mgu is sound and most general on small random pairs") {
    GenParams params;
    params.max_term_depth = 3;
    Signature sig = default_signature(2);
    std::vector<Term> universe{tm("a"), tm("b")};
    std::size_t unifiable = 0;
    for (std::size_t i = 0; i < 3000; ++i) {
        Rng rng = case_rng(5, i);
        // punch variables into ground terms
        auto holey = [&](Term t) {
            for (const Position& p : positions(t)) {
                if (draw(rng, 3) == 0 && is_position_of(t, p)) {
                    t = replace_term(t, Term::variable(draw(rng, 2) == 0 ? "x" : "y"), p);
                }
            }
            return t;
        };
        Term t1 = holey(gen_term(sig, params, rng));
        Term t2 = holey(gen_term(sig, params, rng));
        if (t1.size() > 8 || t2.size() > 8) {
            continue;
        }
        auto sigma = mgu(t1, t2);
        bool ground_unifier = false;
        bf::each_grounding({t1, t2}, universe, [&](const bf::Binding& theta) {
            if (bf::inst(theta, t1) != bf::inst(theta, t2)) {
                return;
            }
            ground_unifier = true;
            REQUIRE(sigma);
            // theta factors through sigma: theta(sigma(x)) = theta(x)
            for (const auto& [x, v] : theta) {
                REQUIRE(bf::inst(theta, apply_subst(*sigma, Term::variable(x))) == v);
            }
        });
        if (sigma) {
            ++unifiable;
            REQUIRE(apply_subst(*sigma, t1) == apply_subst(*sigma, t2));
            // idempotent
            for (const auto& [x, v] : sigma->bindings()) {
                REQUIRE(apply_subst(*sigma, v) == v);
            }
        }
        (void)ground_unifier;
    }
    CHECK(unifiable > 100);
}

TEST_CASE("critical pairs of {a->b, a->c}") {
    auto cps = critical_pairs(fx::trs("(RULES a -> b a -> c)"));
    REQUIRE(cps.size() == 2);
    CHECK(cps[0].overlap_pos.is_root());
    CHECK(std::set<Term>{cps[0].left, cps[0].right} == std::set<Term>{tm("b"), tm("c")});
    CHECK(cps[0].left == cps[1].right);
    CHECK(cps[0].right == cps[1].left);
}

TEST_CASE("critical pairs of E1 and CL") {
    CHECK(critical_pairs(fx::e1()).empty());
    CHECK(critical_pairs(fx::cl()).empty());
}

TEST_CASE("critical pair of {f(g(x))->a, g(b)->c}") {
    auto cps = critical_pairs(fx::trs("(VAR x) (RULES f(g(x)) -> a g(b) -> c)"));
    REQUIRE(cps.size() == 1);
    const CriticalPair& cp = cps[0];
    CHECK(cp.overlap_pos == pos("1"));
    CHECK(cp.outer_rule == 0);
    CHECK(cp.inner_rule == 1);
    // inner contraction on the left, outer on the right
    CHECK(cp.left == tm("f(c)"));
    CHECK(cp.right == tm("a"));
    CHECK(cp.peak == tm("f(g(b))"));
    // x renamed apart to x#0
    CHECK(cp.mgu == Substitution{{"x#0", tm("b")}});
    CHECK_FALSE(cp.trivial);
}

TEST_CASE("self-overlap below the root is found") {
    // f(f(x)) overlaps itself at 1
    auto cps = critical_pairs(fx::trs("(VAR x) (RULES f(f(x)) -> g(x))"));
    REQUIRE(cps.size() == 1);
    CHECK(cps[0].overlap_pos == pos("1"));
    CHECK(cps[0].outer_rule == 0);
    CHECK(cps[0].inner_rule == 0);
    // renamed-equal copies at the root are excluded
    CHECK(critical_pairs(fx::trs("(VAR x) (RULES f(x) -> g(x))")).empty());
}

TEST_CASE("critical pair invariants and peaks on random systems") {
    GenParams params;
    Term fresh = tm("c");
    std::size_t seen = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        Rng rng = case_rng(9, i);
        Trs trs = gen_trs(params, rng);
        for (const CriticalPair& cp : critical_pairs(trs)) {
            ++seen;
            REQUIRE_FALSE((cp.outer_rule == cp.inner_rule && cp.overlap_pos.is_root()));
            const Rule& outer = trs.rule(cp.outer_rule);
            REQUIRE(is_position_of(outer.lhs, cp.overlap_pos));
            REQUIRE_FALSE(subterm_at(outer.lhs, cp.overlap_pos).is_variable());
            REQUIRE(cp.trivial == (cp.left == cp.right));
            Trs grounded = trs;
            grounded.signature().add("c", 0);
            Term peak = ground_with(cp.peak, fresh);
            auto reducts = bf::one_step(grounded, peak);
            REQUIRE(reducts.contains(ground_with(cp.left, fresh)));
            REQUIRE(reducts.contains(ground_with(cp.right, fresh)));
        }
    }
    CHECK(seen > 50);
}

TEST_CASE("ambiguity agrees with brute-force overlap search") {
    GenParams params;
    params.max_rule_depth = 2;
    std::vector<std::pair<std::string, std::size_t>> syms{{"a", 0}, {"b", 0}, {"f", 1}, {"g", 1}, {"h", 2}};
    for (std::size_t i = 0; i < 150; ++i) {
        Rng rng = case_rng(13, i);
        Trs trs = gen_trs(params, rng);
        bool found = bf::overlapping_redexes(trs, syms, 6);
        // an overlap in a ground instance implies a critical pair
        if (found) {
            REQUIRE(ambiguous(trs));
        }
        // a critical pair whose peak fits grounds to an overlap
        for (const CriticalPair& cp : critical_pairs(trs)) {
            Term g = ground_with(cp.peak, tm("a"));
            if (g.size() <= 6) {
                REQUIRE(found);
            }
        }
    }
}
