#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "orthokit/error.hpp"
#include "orthokit/format.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"

using namespace orthokit;
using fx::tm;

TEST_CASE("gen_term") {
    GenParams params;
    params.max_term_depth = 1;
    Rng rng = case_rng(1, 0);
    CHECK(gen_term(Signature{{"a", 0}}, params, rng) == tm("a"));

    params.max_term_depth = 2;
    Signature af{{"a", 0}, {"f", 1}};
    for (int i = 0; i < 20; ++i) {
        Term t = gen_term(af, params, rng);
        CHECK((t == tm("a") || t == tm("f(a)")));
    }

    Rng r1 = case_rng(99, 4), r2 = case_rng(99, 4);
    GenParams deep;
    CHECK(gen_term(default_signature(3), deep, r1) == gen_term(default_signature(3), deep, r2));

    try {
        gen_term(Signature{{"f", 1}}, params, rng);
        FAIL("expected no-constant");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_constant);
    }
}

TEST_CASE("generated term depth and subject size bounds") {
    GenParams params;
    for (std::size_t i = 0; i < 300; ++i) {
        Rng rng = case_rng(2, i);
        Term t = gen_term(params.signature, params, rng);
        CHECK(t.depth() <= params.max_term_depth);
        Trs trs = gen_trs(params, rng);
        CHECK(trs.size() <= params.max_rules);
        CHECK(gen_subject(trs, params, rng).size() <= params.max_subject_nodes);
    }
}

TEST_CASE("gen_orthogonal_trs") {
    GenParams params;
    for (std::size_t i = 0; i < 200; ++i) {
        Rng rng = case_rng(3, i);
        Trs trs = gen_orthogonal_trs(params, rng);
        REQUIRE(orthogonal(trs));
        REQUIRE_FALSE(trs.empty());
    }
    Rng a = case_rng(3, 7), b = case_rng(3, 7);
    CHECK(gen_orthogonal_trs(params, a) == gen_orthogonal_trs(params, b));

    GenParams one = params;
    one.max_rules = 1;
    for (std::size_t i = 0; i < 50; ++i) {
        Rng rng = case_rng(4, i);
        Trs trs = gen_orthogonal_trs(one, rng);
        REQUIRE(trs.size() == 1);
        REQUIRE(critical_pairs(trs).empty());
    }
}

TEST_CASE("gen_linear_nonambiguous_trs") {
    GenParams params;
    for (std::size_t i = 0; i < 200; ++i) {
        Rng rng = case_rng(5, i);
        Trs trs = gen_linear_nonambiguous_trs(params, rng);
        REQUIRE(linear_trs(trs));
        REQUIRE_FALSE(ambiguous(trs));
    }
}

TEST_CASE("generated subjects usually contain redexes") {
    GenParams params;
    std::size_t with_redex = 0, n = 300;
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = case_rng(6, i);
        Trs trs = gen_orthogonal_trs(params, rng);
        if (!one_step_reducts(trs, gen_subject(trs, params, rng)).empty()) {
            ++with_redex;
        }
    }
    CHECK(with_redex * 10 >= n * 8);
}

TEST_CASE("enumerate_terms matches the oracle enumeration") {
    Signature sig{{"a", 0}, {"f", 1}, {"h", 2}};
    auto mine = enumerate_terms(sig, 5);
    auto ref = bf::ground_terms({{"a", 0}, {"f", 1}, {"h", 2}}, 5);
    CHECK(std::set<Term>(mine.begin(), mine.end()) == std::set<Term>(ref.begin(), ref.end()));
    CHECK(mine.size() == ref.size());
    for (std::size_t i = 1; i < mine.size(); ++i) {
        CHECK(mine[i - 1].size() <= mine[i].size());
    }
}

TEST_CASE("checker examples") {
    Trs e1 = fx::e1();
    PropertyReport inc = check_inclusion_chain(e1, tm("f(a)"));
    CHECK(inc.verdict() == Verdict::pass);
    CHECK(inc.obligations >= 3);
    CHECK(check_inclusion_chain(e1, tm("g(b)")).verdict() == Verdict::pass);

    PropertyReport dia = check_diamond(e1, tm("f(a)"));
    CHECK(dia.verdict() == Verdict::pass);
    CHECK(dia.obligations == 9);
    CHECK(check_diamond(fx::e2(), tm("f(a)")).verdict() == Verdict::pass);
    Trs cl = fx::cl();
    CHECK(check_diamond(cl, fx::tm(cl, "app(app(app(S,I),I),app(I,a))")).verdict() == Verdict::pass);

    CHECK(check_triangle(e1, tm("f(a)")).verdict() == Verdict::pass);
    PropertyReport nf = check_triangle(e1, tm("g(b)"));
    CHECK(nf.verdict() == Verdict::pass);
    CHECK(nf.obligations == 0);

    CHECK(check_local_confluence_bounded(e1, tm("f(a)"), 3).verdict() == Verdict::pass);
    PropertyReport amb = check_local_confluence_bounded(fx::trs("(RULES a -> b a -> c)"), tm("a"), 3);
    CHECK(amb.verdict() == Verdict::fail);
    REQUIRE(amb.failures.size() == 1);
    CHECK(amb.failures[0].detail.find("(b, c)") != std::string::npos);
    CHECK(amb.failures[0].severity == "expected");
}

TEST_CASE("empty report is inconclusive") {
    PropertyReport r;
    CHECK(r.verdict() == Verdict::inconclusive);
    r.cases_run = 1;
    CHECK(r.verdict() == Verdict::pass);
    r.failures.push_back({});
    CHECK(r.verdict() == Verdict::fail);
}

TEST_CASE("cap hits are inconclusive") {
    OracleCaps caps;
    caps.parallel_steps = 2;
    PropertyReport r = check_diamond(fx::e1(), tm("h2(a,a)"), caps);
    CHECK(r.inconclusive == 1);
    CHECK(r.verdict() == Verdict::inconclusive);
}

TEST_CASE("shrink_term") {
    Signature sig{{"a", 0}, {"b", 0}, {"f", 1}, {"h", 2}};
    // fails whenever some b occurs
    auto has_b = [](const Term& t) { return to_string(t).find('b') != std::string::npos; };
    Term shrunk = shrink_term(tm("h(f(a),h(a,f(b)))"), sig, has_b);
    CHECK(shrunk == tm("b"));
    Term kept = shrink_term(tm("f(a)"), sig, [](const Term& t) { return t.size() == 2; });
    CHECK(kept == tm("f(a)"));
}

TEST_CASE("serial and OpenMP runs give identical reports") {
    for (Suite suite : {Suite::inclusion, Suite::diamond, Suite::triangle}) {
        SuiteConfig config;
        config.suite = suite;
        config.seed = 42;
        config.params.seed = 42;
        config.cases = 60;
        config.terms_per_case = 3;
        PropertyReport serial = run_suite(config, ExecMode::serial);
        PropertyReport parallel = run_suite(config, ExecMode::parallel);
        CHECK(serial == parallel);
        CHECK(serial.verdict() == Verdict::pass);
        CHECK(serial == run_suite(config, ExecMode::serial));
    }
}

TEST_CASE("map_cases turns exceptions into bug failures") {
    auto reports = map_cases(4, ExecMode::parallel, [](std::size_t i) -> PropertyReport {
        if (i == 2) {
            throw Error(ErrorKind::joined_check, "boom");
        }
        PropertyReport r;
        r.cases_run = 1;
        return r;
    });
    REQUIRE(reports.size() == 4);
    CHECK(reports[2].verdict() == Verdict::fail);
    CHECK(reports[2].failures[0].severity == "bug");
    CHECK(reports[2].failures[0].case_index == 2);
    PropertyReport merged = merge_reports("m", 5, reports);
    CHECK(merged.cases_run == 3);
    CHECK(merged.verdict() == Verdict::fail);
}
