#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "orthokit/term.hpp"

namespace orthokit {

/// A rewrite rule lhs -> rhs. The id is its index in the owning Trs.
struct Rule {
    std::size_t id = 0;
    Term lhs;
    Term rhs;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Throws var_as_lhs or unbound_rhs_var when (lhs, rhs) is not a rule.
void check_rule(const Term& lhs, const Term& rhs);

/// A term rewriting system: signature plus an ordered list of rules.
class Trs {
public:
    Trs() = default;
    explicit Trs(Signature signature) : signature_(std::move(signature)) {}
    /// Signature inferred from the rules (arities from first use).
    static Trs from_rules(const std::vector<std::pair<Term, Term>>& rules);
    static Trs from_rules(Signature signature, const std::vector<std::pair<Term, Term>>& rules);

    /// Validates and appends; returns the new rule id.
    std::size_t add_rule(const Term& lhs, const Term& rhs);

    const Signature& signature() const noexcept { return signature_; }
    Signature& signature() noexcept { return signature_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }
    bool empty() const noexcept { return rules_.empty(); }
    /// Throws invalid_rule_id.
    const Rule& rule(std::size_t id) const;

    /// Same TRS with rule `id` removed (later ids shift down).
    Trs without_rule(std::size_t id) const;

    friend bool operator==(const Trs&, const Trs&) = default;

private:
    Signature signature_;
    std::vector<Rule> rules_;
};

/// An occurrence of a rule instance inside a subject term.
struct Redex {
    Position position;
    std::size_t rule = 0;
    Substitution subst;

    friend bool operator==(const Redex&, const Redex&) = default;
};

struct Reduct {
    Redex redex;
    Term result;
};

/// Minimal σ with σ(pattern) = subject; non-linear patterns need consistent bindings.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// One rewrite step at `p` with rule `rule_id`, or nullopt if the lhs does not match there.
std::optional<Term> reduce_at(const Trs& trs, const Term& s, const Position& p, std::size_t rule_id);

/// Throws invalid_redex unless `r` describes an actual redex of `s`.
void check_redex(const Trs& trs, const Term& s, const Redex& r);
/// Contracts a validated redex.
Term contract(const Trs& trs, const Term& s, const Redex& r);

/// All one-step reducts, ordered by position then rule id.
std::vector<Reduct> one_step_reducts(const Trs& trs, const Term& s);
/// Only the redexes of `s`, same order.
std::vector<Redex> redexes(const Trs& trs, const Term& s);

bool is_reduction(const Trs& trs, const Term& s, const Term& t);

inline constexpr std::size_t default_node_cap = 100'000;

/// Terms reachable in at most `depth` steps (breadth-first, includes `s`).
/// Throws cap_exceeded once more than `node_cap` distinct terms are seen.
std::set<Term> reachable_set(const Trs& trs, const Term& s, std::size_t depth,
                             std::size_t node_cap = default_node_cap);

/// Leftmost-innermost rewriting; nullopt when `fuel` steps do not reach a normal form.
std::optional<Term> normalize(const Trs& trs, const Term& s, std::size_t fuel);

}  // namespace orthokit
