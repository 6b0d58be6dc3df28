// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when everything passes).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

#include "oracles.hpp"
#include "orthokit/error.hpp"
#include "orthokit/format.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"
#include "orthokit/parallel_moves.hpp"
#include "orthokit/report_json.hpp"

using namespace orthokit;

namespace {

constexpr std::uint64_t seed = 2024;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* name, const Outcome& o, double seconds) {
    std::printf("[%s] %s %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) {
        ++failures;
    }
}

std::string only;

void run(const char* id, const char* name, const std::function<Outcome()>& body) {
    if (!only.empty() && only != id) {
        return;
    }
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report(id, name, o, dt.count());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Term tm(const Trs& trs, const std::string& text) { return parse_term_open(text, trs.signature()); }

// Replays the (TRS, subjects) of one run_suite case.
template <typename Gen>
std::pair<Trs, std::vector<Term>> replay(std::size_t index, const GenParams& params, std::size_t terms, Gen gen) {
    Rng rng = case_rng(seed, index);
    Trs trs = gen(params, rng);
    std::vector<Term> subjects;
    for (std::size_t k = 0; k < terms; ++k) {
        subjects.push_back(gen_subject(trs, params, rng));
    }
    return {std::move(trs), std::move(subjects)};
}

// ------------------------------------------------------------------ 1

Outcome inclusion_chain() {
    SuiteConfig config;
    config.suite = Suite::inclusion;
    config.seed = seed;
    config.params.seed = seed;
    config.cases = 1000;
    auto start = std::chrono::steady_clock::now();
    PropertyReport r = run_suite(config, ExecMode::parallel);
    double harness = seconds_since(start);

    // independent re-check on the same instances
    std::size_t mismatches = 0, oversize = 0, checked = 0, reach_checked = 0;
    for (std::size_t i = 0; i < config.cases; ++i) {
        auto [trs, subjects] = replay(i, config.params, 1, gen_trs);
        const Term& s = subjects[0];
        if (trs.size() > 4 || s.size() > 12) {
            ++oversize;
        }
        auto par = bf::parallel_reducts(trs, s, 12);
        if (!par) {
            continue;
        }
        ++checked;
        for (const Term& t : bf::one_step(trs, s)) {
            mismatches += !par->contains(t);
        }
        // reachability in at most |redexes| steps, kept to small counts
        std::size_t redexes = bf::steps(trs, s).size();
        if (redexes <= 3) {
            ++reach_checked;
            auto reach = bf::reach(trs, s, redexes);
            for (const Term& t : *par) {
                mismatches += !reach.contains(t);
            }
        }
    }
    double total = seconds_since(start);
    bool pass = r.failures.empty() && r.cases_run >= 1000 && mismatches == 0 && oversize == 0 && harness <= 60;
    return {pass, fmt("cases=%zu failures=%zu inconclusive=%zu obligations=%zu oracle_checked=%zu reach_checked=%zu "
                      "oracle_mismatch=%zu oversize=%zu harness=%.2fs total=%.2fs",
                      r.cases_run, r.failures.size(), r.inconclusive, r.obligations, checked, reach_checked, mismatches, oversize,
                      harness, total)};
}

// ------------------------------------------------------------------ 2

Outcome diamond() {
    SuiteConfig config;
    config.suite = Suite::diamond;
    config.seed = seed;
    config.params.seed = seed;
    config.params.max_subject_nodes = 10;
    config.cases = 200;
    config.terms_per_case = 10;
    auto start = std::chrono::steady_clock::now();
    PropertyReport r = run_suite(config, ExecMode::parallel);
    double harness = seconds_since(start);

    // u must lie in the powerset-oracle intersection for every pair
    std::size_t pairs = 0, outside = 0, skipped = 0, not_orthogonal = 0;
    for (std::size_t i = 0; i < config.cases; ++i) {
        auto [trs, subjects] = replay(i, config.params, config.terms_per_case, gen_orthogonal_trs);
        not_orthogonal += !orthogonal(trs);
        DivergenceJoiner joiner(trs);
        std::unordered_map<Term, std::optional<std::set<Term>>, TermHash> cache;
        auto reducts = [&](const Term& t) -> const std::optional<std::set<Term>>& {
            auto it = cache.find(t);
            if (it == cache.end()) {
                it = cache.emplace(t, bf::parallel_reducts(trs, t, 12)).first;
            }
            return it->second;
        };
        for (const Term& s : subjects) {
            std::vector<ParallelReduct> steps;
            try {
                steps = parallel_reducts_bounded(trs, s, config.caps.parallel_steps);
            } catch (const Error&) {
                ++skipped;
                continue;
            }
            for (const auto& l : steps) {
                for (const auto& rr : steps) {
                    JoinWitness w = joiner.join(s, l.step, rr.step);
                    const auto& a = reducts(w.left_term);
                    const auto& b = reducts(w.right_term);
                    if (!a || !b) {
                        ++skipped;
                        continue;
                    }
                    ++pairs;
                    outside += !(a->contains(w.join_term) && b->contains(w.join_term));
                }
            }
        }
    }
    std::size_t subjects = config.cases * config.terms_per_case;
    double rate = static_cast<double>(r.inconclusive) / static_cast<double>(subjects);
    bool pass = r.failures.empty() && not_orthogonal == 0 && r.cases_run + r.inconclusive == subjects &&
                rate <= 0.05 && outside == 0 && harness <= 300;
    return {pass, fmt("trs=%zu terms=%zu pairs=%zu failures=%zu inconclusive=%zu (%.2f%%) oracle_pairs=%zu "
                      "oracle_outside=%zu oracle_skipped=%zu harness=%.2fs",
                      config.cases, subjects, r.obligations, r.failures.size(), r.inconclusive, 100 * rate, pairs,
                      outside, skipped, harness)};
}

// ------------------------------------------------------------------ 3

Outcome triangle() {
    SuiteConfig config;
    config.suite = Suite::triangle;
    config.seed = seed;
    config.params.seed = seed;
    config.cases = 200;
    config.terms_per_case = 10;
    PropertyReport r = run_suite(config, ExecMode::parallel);

    std::size_t divergences = 0, violations = 0, bad_systems = 0;
    for (std::size_t i = 0; i < config.cases; ++i) {
        auto [trs, subjects] = replay(i, config.params, config.terms_per_case, gen_linear_nonambiguous_trs);
        bad_systems += !(linear_trs(trs) && !ambiguous(trs));
        for (const Term& s : subjects) {
            auto reds = one_step_reducts(trs, s);
            for (const Reduct& l : reds) {
                for (const Reduct& rr : reds) {
                    ++divergences;
                    TriangleJoin j = triangle_join(trs, s, l.redex, rr.redex);
                    const Term &t1 = l.result, &t2 = rr.result, &u = j.join_term;
                    bool left_step = bf::one_step(trs, t1).contains(u);
                    bool right_step = bf::one_step(trs, t2).contains(u);
                    bool left_rc = left_step || t1 == u;
                    bool right_rc = right_step || t2 == u;
                    bool holds = (left_rc && right_step) || (left_step && right_rc);
                    // both redexes equal: t1 = t2 = u, the reflexive case
                    bool same = t1 == t2 && u == t1;
                    violations += !(holds || same);
                }
            }
        }
    }
    bool pass = r.failures.empty() && violations == 0 && bad_systems == 0 && r.cases_run >= 200;
    return {pass, fmt("trs=%zu terms=%zu divergences=%zu failures=%zu oracle_divergences=%zu oracle_violations=%zu",
                      config.cases, r.cases_run, r.obligations, r.failures.size(), divergences, violations)};
}

// ------------------------------------------------------------------ 4

Outcome length_lemma() {
    std::mt19937_64 rng(seed);
    auto rand_pos = [&](std::size_t max_len) {
        std::vector<std::size_t> steps(rng() % (max_len + 1));
        for (auto& s : steps) {
            s = 1 + rng() % 3;
        }
        return bf::Path(steps);
    };
    std::size_t cases = 10000, nonempty = 0, bad_length = 0, bad_element = 0;
    for (std::size_t i = 0; i < cases; ++i) {
        bf::Path p = rand_pos(3);
        std::vector<bf::Path> items;
        std::size_t want = rng() % 7;
        for (std::size_t tries = 0; items.size() < want && tries < 60; ++tries) {
            bf::Path q = rand_pos(3);
            if (rng() % 2) {
                bf::Path full = p;
                full.insert(full.end(), q.begin(), q.end());
                q = full;
            }
            bool ok = std::all_of(items.begin(), items.end(), [&](const bf::Path& x) { return bf::parallel(x, q); });
            if (ok) {
                items.push_back(q);
            }
        }
        std::vector<Position> seq;
        for (const auto& q : items) {
            seq.emplace_back(q);
        }
        PositionSeq pi(seq);
        Position pp(p);
        PositionSeq below = sub_pos(pi, pp);
        PositionSeq suffixes = complement_pos(pp, pi);
        nonempty += !below.empty();
        // reference: strict extensions of p, in order
        std::vector<bf::Path> ref;
        for (const auto& q : items) {
            if (q.size() > p.size() && bf::prefix(p, q)) {
                ref.push_back(q);
            }
        }
        if (suffixes.size() != below.size() || below.size() != ref.size()) {
            ++bad_length;
            continue;
        }
        for (std::size_t k = 0; k < below.size(); ++k) {
            if (pp.concat(suffixes[k]) != below[k] || below[k] != Position(ref[k])) {
                ++bad_element;
            }
        }
    }
    bool pass = bad_length == 0 && bad_element == 0;
    return {pass, fmt("cases=%zu nonempty=%zu length_mismatch=%zu element_mismatch=%zu", cases, nonempty, bad_length,
                      bad_element)};
}

// ------------------------------------------------------------------ 5

Outcome bounded_confluence() {
    Trs cl = parse_trs(slurp(std::string(ORTHOKIT_TEST_DIR) + "/fixtures/cl.trs"));
    cl.signature().add("a", 0);
    Signature sig{{"S", 0}, {"K", 0}, {"I", 0}, {"a", 0}, {"app", 2}};
    auto terms = enumerate_terms(sig, 7);
    std::size_t pass_count = 0, fail_count = 0, inconclusive = 0, divergences = 0, oracle_unjoined = 0;
    for (const Term& s : terms) {
        PropertyReport r = check_local_confluence_bounded(cl, s, 4);
        divergences += r.obligations;
        switch (r.verdict()) {
            case Verdict::pass: ++pass_count; break;
            case Verdict::fail: ++fail_count; break;
            case Verdict::inconclusive: ++inconclusive; break;
        }
    }
    // independent spot check: root divergences joined by the breadth-first oracle
    for (const Term& s : terms) {
        auto succ = bf::one_step(cl, s);
        std::vector<Term> v(succ.begin(), succ.end());
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                auto a = bf::reach(cl, v[i], 4), b = bf::reach(cl, v[j], 4);
                bool met = std::any_of(a.begin(), a.end(), [&](const Term& t) { return b.contains(t); });
                oracle_unjoined += !met;
            }
        }
    }
    Trs amb = parse_trs("(RULES a -> b a -> c)");
    PropertyReport neg = check_local_confluence_bounded(amb, Term::apply("a"), 4);
    bool witness = neg.verdict() == Verdict::fail && neg.failures.size() == 1 &&
                   neg.failures[0].detail.find("(b, c)") != std::string::npos;
    bool pass = fail_count == 0 && oracle_unjoined == 0 && witness && terms.size() > 0;
    return {pass, fmt("terms=%zu divergences=%zu pass=%zu fail=%zu inconclusive=%zu oracle_unjoined=%zu "
                      "negative_control=%s",
                      terms.size(), divergences, pass_count, fail_count, inconclusive, oracle_unjoined,
                      witness ? "fail(b, c)" : "WRONG")};
}

// ------------------------------------------------------------------ 6

Outcome classification() {
    std::string dir = std::string(ORTHOKIT_TEST_DIR);
    auto load = [&](const char* name) { return parse_trs(slurp(dir + "/fixtures/" + name)); };
    std::vector<std::pair<std::string, std::size_t>> syms{{"a", 0}, {"b", 0}, {"c", 0},
                                                          {"f", 1}, {"g", 1}, {"h", 2}};
    std::vector<std::string> problems;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            problems.push_back(what);
        }
    };

    Trs e1 = load("e1.trs");
    expect(orthogonal(e1) && !bf::overlapping_redexes(e1, syms, 6), "E1 orthogonal");

    Trs e2 = load("e2.trs");
    expect(orthogonal(e2) && !right_linear(e2) && !bf::overlapping_redexes(e2, syms, 6),
           "E2 orthogonal, not right-linear");

    OrthoReport nl = analyze(load("nonlinear.trs"));
    expect(!nl.left_linear && nl.offending_rules.size() == 1 && nl.offending_rules[0].count == 2,
           "h(x,x)->x offending count 2");

    Trs amb = load("ambiguous.trs");
    auto amb_cps = critical_pairs(amb);
    expect(ambiguous(amb) && bf::overlapping_redexes(amb, syms, 1) && !amb_cps.empty() &&
               std::set<Term>{amb_cps[0].left, amb_cps[0].right} ==
                   std::set<Term>{Term::apply("b"), Term::apply("c")},
           "{a->b, a->c} CP (b, c)");

    Trs ov = load("overlap.trs");
    auto cps = critical_pairs(ov);
    bool cp_ok = cps.size() == 1 && cps[0].overlap_pos == Position{1} &&
                 std::set<Term>{cps[0].left, cps[0].right} == std::set<Term>{tm(ov, "a"), tm(ov, "f(c)")};
    // the mgu binds the (renamed) x to b and nothing else
    cp_ok = cp_ok && cps[0].mgu.size() == 1 && cps[0].mgu.bindings().begin()->first.starts_with("x") &&
            cps[0].mgu.bindings().begin()->second == tm(ov, "b");
    // brute-force: the peak f(g(b)) contracts to both sides
    cp_ok = cp_ok && bf::one_step(ov, cps[0].peak) == std::set<Term>{cps[0].left, cps[0].right};
    expect(cp_ok, "{f(g(x))->a, g(b)->c} CP (a, f(c)) mgu {x->b}");

    // frozen golden files still match
    auto same = [&](const std::string& golden, const std::string& fixture, const std::string& cmd, const Json& j) {
        return slurp(dir + "/golden/" + golden) == emit_report(cmd, slurp(dir + "/fixtures/" + fixture), j);
    };
    expect(same("check_e1.json", "e1.trs", "check", to_json(analyze(e1))), "golden check_e1");
    expect(same("check_e2.json", "e2.trs", "check", to_json(analyze(e2))), "golden check_e2");
    expect(same("check_nonlinear.json", "nonlinear.trs", "check", to_json(nl)), "golden check_nonlinear");
    expect(same("check_ambiguous.json", "ambiguous.trs", "check", to_json(analyze(amb))), "golden check_ambiguous");
    expect(same("cps_overlap.json", "overlap.trs", "cps", to_json(cps)), "golden cps_overlap");

    std::string detail = problems.empty() ? "5 fixtures and 5 golden files agree" : "";
    for (const auto& p : problems) {
        detail += "mismatch: " + p + "; ";
    }
    return {problems.empty(), detail};
}

// ------------------------------------------------------------------ 7

int run_cli(const std::string& args, std::string* out = nullptr) {
    std::string cmd = "cd '" + std::string(ORTHOKIT_TEST_DIR) + "/fixtures' && '" + ORTHOKIT_CLI + "' " + args +
                      " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return -1;
    }
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        text.append(buf, n);
    }
    int status = pclose(pipe);
    if (out) {
        *out = std::move(text);
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_formats() {
    std::vector<std::string> problems;
    // round trip
    std::size_t roundtrips = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        Rng rng = case_rng(seed, i);
        GenParams params;
        params.max_arity = 1 + i % 3;
        params.signature = default_signature(params.max_arity);
        Trs trs = i % 2 ? gen_trs(params, rng) : gen_orthogonal_trs(params, rng);
        std::string printed = print_trs(trs);
        Trs back = parse_trs(printed);
        bool same = back.rules() == trs.rules() && print_trs(back) == printed;
        for (const auto& [name, arity] : back.signature().symbols()) {
            same = same && trs.signature().arity(name) == arity;
        }
        roundtrips += same;
    }
    if (roundtrips != 1000) {
        problems.push_back(fmt("round trip %zu/1000", roundtrips));
    }

    // exit codes per fixture class
    struct Expect {
        const char* args;
        int code;
    };
    const Expect expected[] = {
        {"check e1.trs", 0},
        {"check ambiguous.trs --json", 0},
        {"cps overlap.trs", 0},
        {"join e1.trs --term 'f(a)' --left e:0 --right 1:1", 0},
        {"join ambiguous.trs --term a --left e:0 --right e:1", 1},
        {"join e1.trs --term 'f(a)' --left e:1 --right 1:1", 1},
        {"confluence e1.trs --term 'f(a)' --depth 3", 0},
        {"confluence ambiguous.trs --term a --depth 3", 1},
        {"rewrite loop.trs --term a --fuel 5", 3},
        {"check var_lhs.trs", 2},
        {"check unbound.trs", 2},
        {"check arity.trs", 2},
        {"check syntax.trs", 2},
        {"check theory.trs", 2},
        {"rewrite e1.trs --term 'f(a,b)'", 2},
        {"no-such-command", 2},
        {"fuzz --seed 3 --cases 10 --suite all", 0},
        {"fuzz --seed 3 --cases 0", 3},
    };
    std::size_t codes_ok = 0;
    for (const Expect& e : expected) {
        int got = run_cli(e.args);
        if (got == e.code) {
            ++codes_ok;
        } else {
            problems.push_back(fmt("'%s' exited %d, expected %d", e.args, got, e.code));
        }
    }

    // byte stability
    std::string a, b, c, d;
    run_cli("fuzz --seed 11 --cases 30 --terms 3 --suite all --json", &a);
    run_cli("fuzz --seed 11 --cases 30 --terms 3 --suite all --json", &b);
    run_cli("fuzz --seed 11 --cases 30 --terms 3 --suite all --json --serial", &c);
    run_cli("join e1.trs --term 'f(a)' --left e:0 --right 1:1 --json", &d);
    bool stable = !a.empty() && a == b && a == c &&
                  d == slurp(std::string(ORTHOKIT_TEST_DIR) + "/golden/join_e1.json");
    if (!stable) {
        problems.push_back("JSON output not byte-stable");
    }
    std::string detail = fmt("roundtrip=%zu/1000 exit_codes=%zu/%zu json_stable=%s", roundtrips, codes_ok,
                             std::size(expected), stable ? "yes" : "no");
    for (const auto& p : problems) {
        detail += "; " + p;
    }
    return {problems.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        only = argv[1];
    }
    run("C1", "inclusion chain", inclusion_chain);
    run("C2", "diamond property", diamond);
    run("C3", "triangle joinability", triangle);
    run("C4", "length lemma", length_lemma);
    run("C5", "bounded confluence (CL)", bounded_confluence);
    run("C6", "classification fixtures", classification);
    run("C7", "CLI and formats", cli_formats);
    std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures;
}
