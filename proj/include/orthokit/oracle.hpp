#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orthokit/rewrite.hpp"
#include "orthokit/term.hpp"

namespace orthokit {

using Rng = std::mt19937_64;

/// Independent stream for case `index` of a run seeded with `master`.
Rng case_rng(std::uint64_t master, std::uint64_t index);
/// Uniform draw from [0, n). n must be positive.
std::size_t draw(Rng& rng, std::size_t n);

/// a/0, b/0, f/1, g/1, then h/2 and k/3 as `max_arity` allows.
Signature default_signature(std::size_t max_arity = 2);

struct GenParams {
    std::uint64_t seed = 0;
    std::size_t max_term_depth = 4;
    std::size_t max_rules = 4;
    Signature signature = default_signature(2);
    std::size_t max_arity = 2;
    std::size_t max_rule_depth = 3;
    std::size_t max_subject_nodes = 12;
};

/// Ground term of depth <= params.max_term_depth; constants are forced at
/// the last level. Throws no_constant when the signature has none.
Term gen_term(const Signature& sig, const GenParams& params, Rng& rng);

/// Unconstrained rules (possibly non-linear or overlapping).
Trs gen_trs(const GenParams& params, Rng& rng);
/// Rejection-sampled orthogonal TRS. Throws generation_exhausted after
/// 10,000 rejected candidates.
Trs gen_orthogonal_trs(const GenParams& params, Rng& rng);
/// Rejection-sampled linear, non-ambiguous TRS.
Trs gen_linear_nonambiguous_trs(const GenParams& params, Rng& rng);

/// Ground subject of at most params.max_subject_nodes nodes, with instances
/// of rule left-hand sides planted in it.
Term gen_subject(const Trs& trs, const GenParams& params, Rng& rng);

/// Every ground term over `sig` with at most `max_nodes` nodes, ordered by size.
std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_nodes);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct Counterexample {
    std::string trs;
    std::string term;
    std::string detail;
    /// "bug" when the failure contradicts a theorem the input satisfies the
    /// hypotheses of; "expected" otherwise.
    std::string severity;
    std::uint64_t seed = 0;
    std::size_t case_index = 0;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct PropertyReport {
    std::string property_name;
    std::uint64_t seed = 0;
    std::size_t cases_run = 0;
    /// Individual obligations discharged (pairs joined, reducts checked, ...).
    std::size_t obligations = 0;
    std::vector<Counterexample> failures;
    std::size_t inconclusive = 0;

    Verdict verdict() const noexcept;
    /// Appends another report's counts and failures.
    void merge(const PropertyReport& other);

    friend bool operator==(const PropertyReport&, const PropertyReport&) = default;
};

/// Step caps used by the checkers.
struct OracleCaps {
    std::size_t parallel_steps = 512;
    std::size_t reachable_terms = 100'000;
};

PropertyReport check_inclusion_chain(const Trs& trs, const Term& s, const OracleCaps& caps = {});
/// Requires orthogonal(trs); failures are bugs.
PropertyReport check_diamond(const Trs& trs, const Term& s, const OracleCaps& caps = {});
/// Requires linear_trs(trs) and !ambiguous(trs).
PropertyReport check_triangle(const Trs& trs, const Term& s, const OracleCaps& caps = {});
/// Every one-step divergence from every term reachable within `depth` must
/// meet within `depth` further steps on both sides.
PropertyReport check_local_confluence_bounded(const Trs& trs, const Term& s, std::size_t depth,
                                              const OracleCaps& caps = {});

/// Greedy shrinking: repeatedly replaces `s` by a proper subterm or a
/// subterm by a constant while `still_fails` holds.
Term shrink_term(const Term& s, const Signature& sig, const std::function<bool(const Term&)>& still_fails);

enum class ExecMode { serial, parallel };

/// Runs `n` independent cases and returns their reports indexed by case.
/// The parallel mode distributes cases over OpenMP threads; exceptions are
/// turned into bug-severity failures in both modes.
std::vector<PropertyReport> map_cases(std::size_t n, ExecMode mode,
                                      const std::function<PropertyReport(std::size_t)>& run_case);

/// Merges per-case reports in case order.
PropertyReport merge_reports(const std::string& name, std::uint64_t seed, const std::vector<PropertyReport>& parts);

enum class Suite { inclusion, diamond, triangle };
std::string to_string(Suite s);

struct SuiteConfig {
    Suite suite = Suite::inclusion;
    std::uint64_t seed = 0;
    std::size_t cases = 100;
    std::size_t terms_per_case = 1;
    GenParams params;
    OracleCaps caps;
};

/// Generates one TRS per case (kind depending on the suite) and checks
/// `terms_per_case` generated subjects against it.
PropertyReport run_suite(const SuiteConfig& config, ExecMode mode);

}  // namespace orthokit
