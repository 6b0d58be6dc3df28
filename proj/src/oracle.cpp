#include "orthokit/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "orthokit/critical_pairs.hpp"
#include "orthokit/error.hpp"
#include "orthokit/format.hpp"
#include "orthokit/orthogonality.hpp"
#include "orthokit/parallel_moves.hpp"
#include "orthokit/parallel_reduction.hpp"

namespace orthokit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::size_t max_rejections = 10'000;
constexpr std::size_t rejections_before_shrink = 200;

}  // namespace

Rng case_rng(std::uint64_t master, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(master) ^ (index * 0xd1342543de82ef95ULL + 1)));
}

std::size_t draw(Rng& rng, std::size_t n) {
    // Rejection keeps the draw unbiased and independent of the standard
    // library's distribution implementation.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

Signature default_signature(std::size_t max_arity) {
    Signature sig{{"a", 0}, {"b", 0}, {"f", 1}, {"g", 1}};
    if (max_arity >= 2) {
        sig.add("h", 2);
    }
    if (max_arity >= 3) {
        sig.add("k", 3);
    }
    return sig;
}

// ---------------------------------------------------------------- generators

namespace {

struct SymbolTable {
    std::vector<std::pair<std::string, std::size_t>> all;
    std::vector<std::string> constants;
    std::vector<std::pair<std::string, std::size_t>> functions;

    SymbolTable(const Signature& sig, std::size_t max_arity) {
        for (const auto& [name, arity] : sig.symbols()) {
            if (arity > max_arity) {
                continue;
            }
            all.emplace_back(name, arity);
            if (arity == 0) {
                constants.push_back(name);
            } else {
                functions.emplace_back(name, arity);
            }
        }
        if (constants.empty()) {
            throw Error(ErrorKind::no_constant, "signature has no constant");
        }
    }
};

Term random_ground(const SymbolTable& table, std::size_t depth, Rng& rng) {
    if (depth <= 1) {
        return Term::apply(table.constants[draw(rng, table.constants.size())]);
    }
    const auto& [name, arity] = table.all[draw(rng, table.all.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) {
        args.push_back(random_ground(table, depth - 1, rng));
    }
    return Term::apply(name, std::move(args));
}

struct PatternState {
    std::vector<std::string> vars;
    bool allow_repeats = false;
};

// Non-root nodes: a variable with probability 1/2, otherwise a symbol.
Term random_pattern_arg(const SymbolTable& table, std::size_t depth, Rng& rng, PatternState& state) {
    if (depth <= 1 || draw(rng, 2) == 0) {
        if (state.allow_repeats && !state.vars.empty() && draw(rng, 4) == 0) {
            return Term::variable(state.vars[draw(rng, state.vars.size())]);
        }
        state.vars.push_back("x" + std::to_string(state.vars.size() + 1));
        return Term::variable(state.vars.back());
    }
    const auto& [name, arity] = table.all[draw(rng, table.all.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) {
        args.push_back(random_pattern_arg(table, depth - 1, rng, state));
    }
    return Term::apply(name, std::move(args));
}

Term random_pattern(const SymbolTable& table, const std::string& root, std::size_t arity, std::size_t depth, Rng& rng,
                    PatternState& state) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) {
        args.push_back(random_pattern_arg(table, depth - 1, rng, state));
    }
    return Term::apply(root, std::move(args));
}

// rhs over the lhs variables; `linear` removes a variable once used.
Term random_rhs(const SymbolTable& table, std::size_t depth, Rng& rng, std::vector<std::string>& pool, bool linear) {
    bool pick_var = !pool.empty() && (depth <= 1 || draw(rng, 3) == 0);
    if (pick_var) {
        std::size_t i = draw(rng, pool.size());
        std::string x = pool[i];
        if (linear) {
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        }
        return Term::variable(x);
    }
    if (depth <= 1) {
        return Term::apply(table.constants[draw(rng, table.constants.size())]);
    }
    const auto& [name, arity] = table.all[draw(rng, table.all.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) {
        args.push_back(random_rhs(table, depth - 1, rng, pool, linear));
    }
    return Term::apply(name, std::move(args));
}

enum class RuleShape { any, orthogonal, linear_nonambiguous };

std::pair<Term, Term> random_rule(const SymbolTable& table, const GenParams& params, Rng& rng, RuleShape shape,
                                  const std::vector<std::string>& used_roots) {
    std::vector<std::pair<std::string, std::size_t>> roots;
    for (const auto& sym : table.all) {
        if (std::find(used_roots.begin(), used_roots.end(), sym.first) == used_roots.end()) {
            roots.push_back(sym);
        }
    }
    if (roots.empty() || shape == RuleShape::any) {
        roots = table.all;
    }
    const auto& [root, arity] = roots[draw(rng, roots.size())];
    PatternState state;
    state.allow_repeats = shape == RuleShape::any;
    std::size_t depth = std::max<std::size_t>(1, params.max_rule_depth);
    Term lhs = random_pattern(table, root, arity, depth, rng, state);
    std::vector<std::string> pool = vars_in_order(lhs);
    Term rhs = random_rhs(table, depth, rng, pool, shape == RuleShape::linear_nonambiguous);
    return {lhs, rhs};
}

bool rule_fits(const Trs& trs, const Rule& candidate, RuleShape shape) {
    if (shape == RuleShape::any) {
        return true;
    }
    if (!linear(candidate.lhs) || (shape == RuleShape::linear_nonambiguous && !linear(candidate.rhs))) {
        return false;
    }
    if (!critical_pairs_between(candidate, candidate).empty()) {
        return false;
    }
    for (const Rule& r : trs.rules()) {
        if (!critical_pairs_between(candidate, r).empty() || !critical_pairs_between(r, candidate).empty()) {
            return false;
        }
    }
    return true;
}

Trs generate(const GenParams& params, Rng& rng, RuleShape shape) {
    SymbolTable table(params.signature, params.max_arity);
    Trs trs(params.signature);
    std::size_t target = 1 + draw(rng, std::max<std::size_t>(1, params.max_rules));
    std::size_t rejections = 0;
    std::size_t rejections_here = 0;
    std::vector<std::string> used_roots;
    while (trs.size() < target) {
        auto [lhs, rhs] = random_rule(table, params, rng, shape, used_roots);
        Rule candidate{trs.size(), lhs, rhs};
        if (rule_fits(trs, candidate, shape)) {
            trs.add_rule(lhs, rhs);
            used_roots.push_back(lhs.symbol());
            rejections_here = 0;
            continue;
        }
        if (++rejections > max_rejections) {
            throw Error(ErrorKind::generation_exhausted,
                        std::to_string(max_rejections) + " candidate rules rejected");
        }
        if (++rejections_here >= rejections_before_shrink && !trs.empty()) {
            target = trs.size();
        }
    }
    return trs;
}

}  // namespace

Term gen_term(const Signature& sig, const GenParams& params, Rng& rng) {
    SymbolTable table(sig, std::numeric_limits<std::size_t>::max());
    return random_ground(table, std::max<std::size_t>(1, params.max_term_depth), rng);
}

Trs gen_trs(const GenParams& params, Rng& rng) { return generate(params, rng, RuleShape::any); }

Trs gen_orthogonal_trs(const GenParams& params, Rng& rng) { return generate(params, rng, RuleShape::orthogonal); }

Trs gen_linear_nonambiguous_trs(const GenParams& params, Rng& rng) {
    return generate(params, rng, RuleShape::linear_nonambiguous);
}

Term gen_subject(const Trs& trs, const GenParams& params, Rng& rng) {
    SymbolTable table(trs.signature(), params.max_arity);
    GenParams small = params;
    small.max_term_depth = 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Term s = random_ground(table, std::max<std::size_t>(1, params.max_term_depth), rng);
        std::size_t plants = trs.empty() ? 0 : draw(rng, 4);
        for (std::size_t k = 0; k < plants; ++k) {
            const Rule& rule = trs.rules()[draw(rng, trs.size())];
            Substitution ground;
            for (const std::string& x : vars_in_order(rule.lhs)) {
                ground.bind(x, random_ground(table, 1 + draw(rng, 2), rng));
            }
            auto all = positions(s);
            Term planted = replace_term(s, apply_subst(ground, rule.lhs), all[draw(rng, all.size())]);
            if (planted.size() <= params.max_subject_nodes) {
                s = std::move(planted);
            }
        }
        if (s.size() <= params.max_subject_nodes) {
            return s;
        }
    }
    return Term::apply(table.constants.front());
}

std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_nodes) {
    // by_size[n] holds every term with exactly n nodes.
    std::vector<std::vector<Term>> by_size(max_nodes + 1);
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        for (const auto& [name, arity] : sig.symbols()) {
            if (arity == 0) {
                if (n == 1) {
                    by_size[1].push_back(Term::apply(name));
                }
                continue;
            }
            if (n < 1 + arity) {
                continue;
            }
            // Distribute n - 1 nodes over the arguments.
            std::vector<Term> partial;
            std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t remaining) {
                if (i == arity) {
                    if (remaining == 0) {
                        by_size[n].push_back(Term::apply(name, partial));
                    }
                    return;
                }
                for (std::size_t k = 1; k + (arity - i - 1) <= remaining; ++k) {
                    for (const Term& t : by_size[k]) {
                        partial.push_back(t);
                        fill(i + 1, remaining - k);
                        partial.pop_back();
                    }
                }
            };
            fill(0, n - 1);
        }
    }
    std::vector<Term> out;
    for (auto& level : by_size) {
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

// ---------------------------------------------------------------- reports

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(Suite s) {
    switch (s) {
        case Suite::inclusion: return "inclusion";
        case Suite::diamond: return "diamond";
        case Suite::triangle: return "triangle";
    }
    return "inclusion";
}

Verdict PropertyReport::verdict() const noexcept {
    if (!failures.empty()) {
        return Verdict::fail;
    }
    return cases_run > 0 ? Verdict::pass : Verdict::inconclusive;
}

void PropertyReport::merge(const PropertyReport& other) {
    cases_run += other.cases_run;
    obligations += other.obligations;
    inconclusive += other.inconclusive;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

PropertyReport merge_reports(const std::string& name, std::uint64_t seed, const std::vector<PropertyReport>& parts) {
    PropertyReport out{name, seed, 0, 0, {}, 0};
    for (const PropertyReport& p : parts) {
        out.merge(p);
    }
    return out;
}

// ---------------------------------------------------------------- checkers

namespace {

PropertyReport fresh(const std::string& name) { return PropertyReport{name, 0, 0, 0, {}, 0}; }

void fail(PropertyReport& report, const Trs& trs, const Term& s, const std::string& detail,
          const std::string& severity) {
    report.failures.push_back(Counterexample{print_trs(trs), to_string(s), detail, severity, 0, 0});
}

bool is_cap(const Error& e) { return e.kind() == ErrorKind::cap_exceeded; }

}  // namespace

PropertyReport check_inclusion_chain(const Trs& trs, const Term& s, const OracleCaps& caps) {
    PropertyReport report = fresh("inclusion");
    try {
        auto parallel = parallel_reducts_bounded(trs, s, caps.parallel_steps);
        std::set<Term> parallel_terms;
        for (const auto& pr : parallel) {
            parallel_terms.insert(pr.result);
        }
        // → ⊆ ⇉
        for (const Reduct& r : one_step_reducts(trs, s)) {
            ParallelStep lifted = lift_single(trs, s, r.redex);
            Term via = apply_parallel(trs, s, lifted);
            ++report.obligations;
            if (via != r.result || !parallel_terms.contains(r.result)) {
                fail(report, trs, s, "one-step reduct " + to_string(r.result) + " is not a parallel reduct", "bug");
            }
        }
        // ⇉ ⊆ →*
        std::map<std::size_t, std::set<Term>> reachable_by_depth;
        for (const auto& pr : parallel) {
            ++report.obligations;
            Term current = s;
            bool ok = true;
            for (const Redex& r : serialize(trs, s, pr.step)) {
                auto next = reduce_at(trs, current, r.position, r.rule);
                if (!next || !is_reduction(trs, current, *next)) {
                    ok = false;
                    break;
                }
                current = std::move(*next);
            }
            if (!ok || current != pr.result) {
                fail(report, trs, s, "serialized step does not reach " + to_string(pr.result), "bug");
                continue;
            }
            auto cached = reachable_by_depth.find(pr.step.size());
            if (cached == reachable_by_depth.end()) {
                cached = reachable_by_depth
                             .emplace(pr.step.size(), reachable_set(trs, s, pr.step.size(), caps.reachable_terms))
                             .first;
            }
            if (!cached->second.contains(pr.result)) {
                fail(report, trs, s, to_string(pr.result) + " not reachable within " + std::to_string(pr.step.size()) +
                                         " steps", "bug");
            }
        }
        report.cases_run = 1;
    } catch (const Error& e) {
        if (!is_cap(e)) {
            throw;
        }
        report.inconclusive = 1;
    }
    return report;
}

PropertyReport check_diamond(const Trs& trs, const Term& s, const OracleCaps& caps) {
    PropertyReport report = fresh("diamond");
    DivergenceJoiner joiner(trs);
    try {
        auto steps = parallel_reducts_bounded(trs, s, caps.parallel_steps);
        std::unordered_map<Term, std::set<Term>, TermHash> reduct_cache;
        auto reducts_of = [&](const Term& t) -> const std::set<Term>& {
            auto it = reduct_cache.find(t);
            if (it == reduct_cache.end()) {
                it = reduct_cache.emplace(t, parallel_reduct_terms(trs, t, caps.parallel_steps)).first;
            }
            return it->second;
        };
        for (const auto& left : steps) {
            for (const auto& right : steps) {
                ++report.obligations;
                try {
                    JoinWitness w = joiner.join(s, left.step, right.step);
                    if (w.left_term != left.result || w.right_term != right.result) {
                        fail(report, trs, s, "witness reports the wrong divergence terms", "bug");
                        continue;
                    }
                    if (!reducts_of(w.left_term).contains(w.join_term) ||
                        !reducts_of(w.right_term).contains(w.join_term)) {
                        fail(report, trs, s,
                             "u=" + to_string(w.join_term) + " is not a common parallel reduct of " +
                                 to_string(w.left_term) + " and " + to_string(w.right_term),
                             "bug");
                    }
                } catch (const Error& e) {
                    if (is_cap(e)) {
                        throw;
                    }
                    fail(report, trs, s, e.what(), "bug");
                }
            }
        }
        report.cases_run = 1;
    } catch (const Error& e) {
        if (!is_cap(e)) {
            throw;
        }
        report.inconclusive = 1;
    }
    return report;
}

PropertyReport check_triangle(const Trs& trs, const Term& s, const OracleCaps&) {
    PropertyReport report = fresh("triangle");
    TriangleJoiner joiner(trs);
    auto reducts = one_step_reducts(trs, s);
    auto steps_to = [&](const Term& from, const Term& to) { return is_reduction(trs, from, to); };
    for (const Reduct& left : reducts) {
        for (const Reduct& right : reducts) {
            ++report.obligations;
            try {
                TriangleJoin j = joiner.join(s, left.redex, right.redex);
                const Term& t1 = left.result;
                const Term& t2 = right.result;
                const Term& u = j.join_term;
                if (j.left_term != t1 || j.right_term != t2) {
                    fail(report, trs, s, "join reports the wrong divergence terms", "bug");
                    continue;
                }
                bool left_step = steps_to(t1, u);
                bool right_step = steps_to(t2, u);
                bool holds = (left_step && (t2 == u || right_step)) || ((t1 == u || left_step) && right_step);
                // A divergence to one and the same term is joined by that term.
                bool degenerate = t1 == t2 && u == t1;
                if (!holds && !degenerate) {
                    fail(report, trs, s,
                         "no triangle closing for " + to_string(t1) + " / " + to_string(t2) + " at u=" + to_string(u),
                         "bug");
                }
            } catch (const Error& e) {
                fail(report, trs, s, e.what(), "bug");
            }
        }
    }
    report.cases_run = 1;
    return report;
}

PropertyReport check_local_confluence_bounded(const Trs& trs, const Term& s, std::size_t depth,
                                              const OracleCaps& caps) {
    PropertyReport report = fresh("local-confluence");
    try {
        std::unordered_map<Term, std::set<Term>, TermHash> cache;
        auto reach = [&](const Term& t) -> const std::set<Term>& {
            auto it = cache.find(t);
            if (it == cache.end()) {
                it = cache.emplace(t, reachable_set(trs, t, depth, caps.reachable_terms)).first;
            }
            return it->second;
        };
        for (const Term& t : reachable_set(trs, s, depth, caps.reachable_terms)) {
            std::set<Term> results;
            for (const Reduct& r : one_step_reducts(trs, t)) {
                results.insert(r.result);
            }
            std::vector<Term> distinct(results.begin(), results.end());
            for (std::size_t i = 0; i < distinct.size(); ++i) {
                for (std::size_t j = i + 1; j < distinct.size(); ++j) {
                    ++report.obligations;
                    const auto& from_left = reach(distinct[i]);
                    const auto& from_right = reach(distinct[j]);
                    bool joined = std::any_of(from_right.begin(), from_right.end(),
                                              [&](const Term& u) { return from_left.contains(u); });
                    if (joined) {
                        continue;
                    }
                    // Re-verify with an uncached search before reporting.
                    auto again_left = reachable_set(trs, distinct[i], depth, caps.reachable_terms);
                    auto again_right = reachable_set(trs, distinct[j], depth, caps.reachable_terms);
                    std::vector<Term> common;
                    std::set_intersection(again_left.begin(), again_left.end(), again_right.begin(),
                                          again_right.end(), std::back_inserter(common));
                    if (common.empty()) {
                        fail(report, trs, t,
                             "(" + to_string(distinct[i]) + ", " + to_string(distinct[j]) + ") not joined within " +
                                 std::to_string(depth) + " steps",
                             "expected");
                    }
                }
            }
        }
        report.cases_run = 1;
    } catch (const Error& e) {
        if (!is_cap(e)) {
            throw;
        }
        report.inconclusive = 1;
    }
    return report;
}

Term shrink_term(const Term& s, const Signature& sig, const std::function<bool(const Term&)>& still_fails) {
    std::vector<Term> constants;
    for (const auto& [name, arity] : sig.symbols()) {
        if (arity == 0) {
            constants.push_back(Term::apply(name));
        }
    }
    Term current = s;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const Position& p : positions(current)) {
            std::vector<Term> candidates;
            if (!p.is_root()) {
                candidates.push_back(subterm_at(current, p));
            }
            for (const Term& c : constants) {
                candidates.push_back(replace_term(current, c, p));
            }
            for (const Term& candidate : candidates) {
                if (candidate.size() < current.size() && still_fails(candidate)) {
                    current = candidate;
                    progress = true;
                    break;
                }
            }
            if (progress) {
                break;
            }
        }
    }
    return current;
}

// ---------------------------------------------------------------- runner

std::vector<PropertyReport> map_cases(std::size_t n, ExecMode mode,
                                      const std::function<PropertyReport(std::size_t)>& run_case) {
    std::vector<PropertyReport> out(n);
    auto guarded = [&](std::size_t i) {
        try {
            out[i] = run_case(i);
        } catch (const std::exception& e) {
            PropertyReport r = fresh("case");
            r.failures.push_back(Counterexample{"", "", e.what(), "bug", 0, i});
            out[i] = std::move(r);
        }
    };
    if (mode == ExecMode::serial) {
        for (std::size_t i = 0; i < n; ++i) {
            guarded(i);
        }
    } else {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) {
            guarded(static_cast<std::size_t>(i));
        }
    }
    return out;
}

namespace {

PropertyReport run_one(const SuiteConfig& config, std::size_t index) {
    Rng rng = case_rng(config.seed, index);
    Trs trs;
    switch (config.suite) {
        case Suite::inclusion: trs = gen_trs(config.params, rng); break;
        case Suite::diamond: trs = gen_orthogonal_trs(config.params, rng); break;
        case Suite::triangle: trs = gen_linear_nonambiguous_trs(config.params, rng); break;
    }
    auto check = [&](const Term& s) {
        switch (config.suite) {
            case Suite::inclusion: return check_inclusion_chain(trs, s, config.caps);
            case Suite::diamond: return check_diamond(trs, s, config.caps);
            case Suite::triangle: return check_triangle(trs, s, config.caps);
        }
        return check_inclusion_chain(trs, s, config.caps);
    };
    PropertyReport out = fresh(to_string(config.suite));
    for (std::size_t k = 0; k < config.terms_per_case; ++k) {
        Term s = gen_subject(trs, config.params, rng);
        PropertyReport r = check(s);
        if (!r.failures.empty()) {
            Term small = shrink_term(s, trs.signature(), [&](const Term& t) { return !check(t).failures.empty(); });
            PropertyReport shrunk = check(small);
            if (!shrunk.failures.empty()) {
                r.failures = std::move(shrunk.failures);
            }
        }
        for (Counterexample& c : r.failures) {
            c.seed = config.seed;
            c.case_index = index;
        }
        out.merge(r);
    }
    return out;
}

}  // namespace

PropertyReport run_suite(const SuiteConfig& config, ExecMode mode) {
    auto parts = map_cases(config.cases, mode, [&](std::size_t i) { return run_one(config, i); });
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (Counterexample& c : parts[i].failures) {
            c.seed = config.seed;
            c.case_index = i;
        }
    }
    return merge_reports(to_string(config.suite), config.seed, parts);
}

}  // namespace orthokit
