#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orthokit/rewrite.hpp"
#include "orthokit/term.hpp"

namespace orthokit {

/// Variants of two rules with disjoint variables. Variables of `first` get
/// the suffix "#<id>"; those of `second` get "#<id>" too unless the ids are
/// equal, in which case "#<id>'" is used.
std::pair<Rule, Rule> rename_apart(const Rule& first, const Rule& second);

using Equations = std::vector<std::pair<Term, Term>>;

/// Most general unifier in idempotent solved form, or nullopt (clash or
/// occurs-check failure).
std::optional<Substitution> mgu(const Term& a, const Term& b);
std::optional<Substitution> unify(Equations problem);

/// Overlap of lhs(inner) into lhs(outer) at a non-variable position.
/// `left` is the inner contraction, `right` the outer one.
struct CriticalPair {
    std::size_t outer_rule = 0;
    std::size_t inner_rule = 0;
    Position overlap_pos;
    Substitution mgu;
    Term left;
    Term right;
    bool trivial = false;

    /// mgu(lhs(outer)), the term both sides are reducts of.
    Term peak;

    friend bool operator==(const CriticalPair&, const CriticalPair&) = default;
};

/// All critical pairs over every ordered pair of rules, including each rule
/// against a renamed copy of itself (root self-overlaps excluded). Ordered by
/// outer rule, inner rule, then overlap position.
std::vector<CriticalPair> critical_pairs(const Trs& trs);

/// Critical pairs between one ordered pair of rules.
std::vector<CriticalPair> critical_pairs_between(const Rule& outer, const Rule& inner);

}  // namespace orthokit
