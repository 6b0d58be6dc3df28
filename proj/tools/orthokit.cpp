// orthokit command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orthokit/error.hpp"
#include "orthokit/format.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"
#include "orthokit/parallel_moves.hpp"
#include "orthokit/report_json.hpp"

using namespace orthokit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;
constexpr int exit_inconclusive = 3;

struct Input {
    std::string text;
    Trs trs;
    std::set<std::string> vars;
};

Input load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::parse_error, "cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Input out{buf.str(), Trs{}, {}};
    out.trs = parse_trs(out.text);
    TrsDocument doc = parse_trs_document(out.text);
    out.vars.insert(doc.var_decls.begin(), doc.var_decls.end());
    return out;
}

Term subject(const Input& in, const std::string& text) { return parse_term(text, in.trs.signature(), in.vars); }

// Errors in the input text exit 2; everything else is a domain error.
int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse_error:
        case ErrorKind::arity_conflict:
        case ErrorKind::arity_mismatch:
        case ErrorKind::var_as_lhs:
        case ErrorKind::unbound_rhs_var:
        case ErrorKind::unknown_symbol:
        case ErrorKind::unsupported_section:
        case ErrorKind::invalid_position:
            return exit_usage;
        default:
            return exit_fail;
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::pass:
            return exit_ok;
        case Verdict::fail:
            return exit_fail;
        case Verdict::inconclusive:
            return exit_inconclusive;
    }
    return exit_fail;
}

void print_report_text(const PropertyReport& r) {
    std::cout << r.property_name << ": " << to_string(r.verdict()) << " (seed " << r.seed << ", cases " << r.cases_run
              << ", obligations " << r.obligations << ", inconclusive " << r.inconclusive << ", failures "
              << r.failures.size() << ")\n";
    for (const Counterexample& c : r.failures) {
        std::cout << "  [" << c.severity << "] case " << c.case_index << " term " << c.term << ": " << c.detail
                  << "\n";
        std::istringstream trs(c.trs);
        for (std::string line; std::getline(trs, line);) {
            std::cout << "    " << line << "\n";
        }
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ORTHOKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse_error, std::string("ORTHOKIT_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

int cmd_check(const std::string& file, bool json) {
    Input in = load(file);
    OrthoReport r = analyze(in.trs);
    if (json) {
        std::cout << emit_report("check", in.text, to_json(r));
        return exit_ok;
    }
    std::cout << "left-linear: " << (r.left_linear ? "yes" : "no") << "\n"
              << "right-linear: " << (r.right_linear ? "yes" : "no") << "\n"
              << "ambiguous: " << (r.ambiguous ? "yes" : "no") << "\n"
              << "orthogonal: " << (r.orthogonal ? "yes" : "no") << "\n"
              << "critical pairs: " << r.critical_pair_count << "\n";
    for (const auto& o : r.offending_rules) {
        std::cout << "  rule " << o.rule << ": variable " << o.variable << " occurs " << o.count
                  << " times in the lhs\n";
    }
    return exit_ok;
}

int cmd_cps(const std::string& file, bool json) {
    Input in = load(file);
    std::vector<CriticalPair> cps = critical_pairs(in.trs);
    if (json) {
        std::cout << emit_report("cps", in.text, to_json(cps));
        return exit_ok;
    }
    for (const CriticalPair& cp : cps) {
        std::cout << "rules " << cp.outer_rule << "/" << cp.inner_rule << " at " << cp.overlap_pos.to_string()
                  << ": " << to_string(cp.left) << " <- " << to_string(cp.peak) << " -> " << to_string(cp.right)
                  << "  mgu " << cp.mgu.to_string() << (cp.trivial ? "  (trivial)" : "") << "\n";
    }
    return exit_ok;
}

int cmd_rewrite(const std::string& file, const std::string& term, std::size_t fuel) {
    Input in = load(file);
    Term s = subject(in, term);
    if (auto nf = normalize(in.trs, s, fuel)) {
        std::cout << to_string(*nf) << "\n";
        return exit_ok;
    }
    std::cout << "fuel exhausted after " << fuel << " steps\n";
    return exit_inconclusive;
}

int cmd_reducts(const std::string& file, const std::string& term, bool parallel) {
    Input in = load(file);
    Term s = subject(in, term);
    if (!parallel) {
        for (const Reduct& r : one_step_reducts(in.trs, s)) {
            std::cout << r.redex.position.to_string() << ":" << r.redex.rule << "  " << to_string(r.result) << "\n";
        }
        return exit_ok;
    }
    for (const ParallelReduct& r : parallel_reducts_bounded(in.trs, s)) {
        std::string step = print_step(r.step);
        std::cout << (step.empty() ? "(empty)" : step) << "  " << to_string(r.result) << "\n";
    }
    return exit_ok;
}

int cmd_parallel(const std::string& file, const std::string& term, const std::string& step_text) {
    Input in = load(file);
    Term s = subject(in, term);
    ParallelStep step = parse_step(step_text, in.trs, s);
    std::cout << to_string(apply_parallel(in.trs, s, step)) << "\n";
    return exit_ok;
}

int cmd_join(const std::string& file, const std::string& term, const std::string& left, const std::string& right,
             bool json) {
    Input in = load(file);
    Term s = subject(in, term);
    if (!orthogonal(in.trs)) {
        OrthoReport r = analyze(in.trs);
        std::cerr << "not-orthogonal: the system must be left-linear and non-ambiguous\n";
        for (const auto& o : r.offending_rules) {
            std::cerr << "  rule " << o.rule << " repeats variable " << o.variable << "\n";
        }
        for (const CriticalPair& cp : r.sample_cps) {
            std::cerr << "  critical pair " << to_string(cp.left) << " / " << to_string(cp.right) << "\n";
        }
        return exit_fail;
    }
    JoinWitness w = join_parallel_divergence(in.trs, s, parse_step(left, in.trs, s), parse_step(right, in.trs, s));
    if (json) {
        std::cout << emit_report("join", in.text + "\n" + term + "\n" + left + "\n" + right, to_json(w));
        return exit_ok;
    }
    std::cout << "t1 = " << to_string(w.left_term) << "\n"
              << "t2 = " << to_string(w.right_term) << "\n"
              << "u  = " << to_string(w.join_term) << "\n"
              << "t1 => u by " << print_step(w.step_from_left) << "\n"
              << "t2 => u by " << print_step(w.step_from_right) << "\n";
    return exit_ok;
}

int cmd_confluence(const std::string& file, const std::string& term, std::size_t depth, bool json) {
    Input in = load(file);
    Term s = subject(in, term);
    PropertyReport r = check_local_confluence_bounded(in.trs, s, depth);
    if (json) {
        std::cout << emit_report("confluence", in.text + "\n" + term + "\n" + std::to_string(depth), to_json(r));
    } else {
        print_report_text(r);
    }
    return verdict_exit(r.verdict());
}

int cmd_fuzz(std::uint64_t seed, std::size_t cases, std::size_t terms, const std::string& suite_name, bool serial,
             bool json) {
    std::vector<Suite> suites;
    if (suite_name == "all") {
        suites = {Suite::inclusion, Suite::diamond, Suite::triangle};
    } else if (suite_name == "inclusion") {
        suites = {Suite::inclusion};
    } else if (suite_name == "diamond") {
        suites = {Suite::diamond};
    } else if (suite_name == "triangle") {
        suites = {Suite::triangle};
    } else {
        throw Error(ErrorKind::parse_error, "unknown suite " + suite_name);
    }
    std::vector<PropertyReport> reports;
    Json payload = Json::array();
    for (Suite suite : suites) {
        SuiteConfig config;
        config.suite = suite;
        config.seed = seed;
        config.cases = cases;
        config.terms_per_case = terms;
        config.params.seed = seed;
        reports.push_back(run_suite(config, serial ? ExecMode::serial : ExecMode::parallel));
        payload.push_back(to_json(reports.back()));
    }
    if (json) {
        std::ostringstream key;
        key << "suite=" << suite_name << ";seed=" << seed << ";cases=" << cases << ";terms=" << terms;
        std::cout << emit_report("fuzz", key.str(), payload);
    } else {
        for (const PropertyReport& r : reports) {
            print_report_text(r);
        }
    }
    bool any_fail = false;
    bool all_inconclusive = true;
    for (const PropertyReport& r : reports) {
        any_fail = any_fail || r.verdict() == Verdict::fail;
        all_inconclusive = all_inconclusive && r.verdict() == Verdict::inconclusive;
    }
    if (any_fail) {
        return exit_fail;
    }
    return all_inconclusive ? exit_inconclusive : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthokit: term rewriting, orthogonality and parallel moves"};
    app.require_subcommand(1);

    std::string file, term, step, left, right, suite = "all";
    bool json = false, parallel = false, serial = false;
    std::size_t fuel = 10'000, depth = 4, cases = 100, terms = 10;
    std::uint64_t seed = 0;

    auto* check = app.add_subcommand("check", "orthogonality report");
    check->add_option("FILE", file)->required();
    check->add_flag("--json", json);

    auto* cps = app.add_subcommand("cps", "critical pairs");
    cps->add_option("FILE", file)->required();
    cps->add_flag("--json", json);

    auto* rewrite = app.add_subcommand("rewrite", "leftmost-innermost normal form");
    rewrite->add_option("FILE", file)->required();
    rewrite->add_option("--term", term)->required();
    rewrite->add_option("--fuel", fuel);

    auto* reducts = app.add_subcommand("reducts", "one-step or parallel reducts");
    reducts->add_option("FILE", file)->required();
    reducts->add_option("--term", term)->required();
    reducts->add_flag("--parallel", parallel);

    auto* par = app.add_subcommand("parallel", "apply a parallel step");
    par->add_option("FILE", file)->required();
    par->add_option("--term", term)->required();
    par->add_option("--step", step)->required();

    auto* join = app.add_subcommand("join", "close a parallel divergence");
    join->add_option("FILE", file)->required();
    join->add_option("--term", term)->required();
    join->add_option("--left", left)->required();
    join->add_option("--right", right)->required();
    join->add_flag("--json", json);

    auto* confl = app.add_subcommand("confluence", "bounded local confluence");
    confl->add_option("FILE", file)->required();
    confl->add_option("--term", term)->required();
    confl->add_option("--depth", depth);
    confl->add_flag("--json", json);

    auto* fuzz = app.add_subcommand("fuzz", "randomized property checks");
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--cases", cases);
    fuzz->add_option("--terms", terms, "subjects per generated TRS");
    fuzz->add_option("--suite", suite)->check(CLI::IsMember({"inclusion", "diamond", "triangle", "all"}));
    fuzz->add_flag("--serial", serial, "run cases on one thread");
    fuzz->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*check) {
            return cmd_check(file, json);
        }
        if (*cps) {
            return cmd_cps(file, json);
        }
        if (*rewrite) {
            return cmd_rewrite(file, term, fuel);
        }
        if (*reducts) {
            return cmd_reducts(file, term, parallel);
        }
        if (*par) {
            return cmd_parallel(file, term, step);
        }
        if (*join) {
            return cmd_join(file, term, left, right, json);
        }
        if (*confl) {
            return cmd_confluence(file, term, depth, json);
        }
        if (*fuzz) {
            if (fuzz->count("--seed") == 0) {
                seed = default_seed();
            }
            return cmd_fuzz(seed, cases, terms, suite, serial, json);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_fail;
    }
    return exit_usage;
}
