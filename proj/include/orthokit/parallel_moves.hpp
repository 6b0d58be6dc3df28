#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orthokit/parallel_reduction.hpp"
#include "orthokit/position_calculus.hpp"
#include "orthokit/rewrite.hpp"

namespace orthokit {

/// σ with the binding of `var` rewritten at the given parallel positions of
/// σ(var). An empty update returns σ unchanged.
Substitution sigma_update(const Substitution& sigma, const std::string& var, std::span<const Term> terms,
                          const PositionSeq& positions);

/// The substitution σ′ for an outer redex whose lhs variables `vars` sit at
/// the full-term positions `var_positions`, given the inner step's positions
/// and contracta (`inner_positions`, `inner_terms`). Each variable's binding
/// absorbs the contracta of the inner redexes at or below its position.
Substitution sigma_prime(const Substitution& sigma, std::span<const std::string> vars,
                         const PositionSeq& var_positions, std::span<const Term> inner_terms,
                         const PositionSeq& inner_positions);

/// Inner redexes below an outer redex, grouped by the lhs variable whose
/// instance contains them: outer_pos · var_pos_in_lhs · suffix is the inner
/// redex position.
struct NestedDecomposition {
    struct Entry {
        Position suffix;
        std::size_t inner_rule = 0;
        Substitution inner_subst;

        friend bool operator==(const Entry&, const Entry&) = default;
    };
    struct Group {
        std::string var;
        Position var_pos_in_lhs;
        std::vector<Entry> entries;

        friend bool operator==(const Group&, const Group&) = default;
    };

    Position outer_pos;
    std::size_t outer_rule = 0;
    Substitution outer_subst;
    /// Ordered by lhs variable position; only variables with entries appear.
    std::vector<Group> groups;
};

/// Throws precondition_violated unless the TRS is left-linear, and
/// overlap_violation when an inner redex at or below the outer position
/// does not lie inside a variable instance of the outer lhs.
NestedDecomposition decompose_nested(const Trs& trs, const Term& s, const Redex& outer, const ParallelStep& inner);

struct JoinWitness {
    Term left_term;   // t1
    Term right_term;  // t2
    Term join_term;   // u
    ParallelStep step_from_left;
    ParallelStep step_from_right;
};

/// One-step-per-side closing of a parallel divergence t1 ⇇ s ⇉ t2 for an
/// orthogonal TRS. Throws not_orthogonal, invalid_step, overlap_violation,
/// or joined_check (the last one is an internal consistency failure).
JoinWitness join_parallel_divergence(const Trs& trs, const Term& s, const ParallelStep& left,
                                     const ParallelStep& right);

/// Reusable joiner that checks orthogonality once.
class DivergenceJoiner {
public:
    explicit DivergenceJoiner(const Trs& trs);
    JoinWitness join(const Term& s, const ParallelStep& left, const ParallelStep& right) const;

private:
    const Trs& trs_;
};

/// Triangle closing of a one-step divergence; an empty side means t = u.
struct TriangleJoin {
    Term left_term;
    Term right_term;
    Term join_term;
    std::optional<Redex> step_from_left;
    std::optional<Redex> step_from_right;
};

/// Requires linear_trs and non-ambiguity (precondition_violated otherwise).
TriangleJoin triangle_join(const Trs& trs, const Term& s, const Redex& left, const Redex& right);

class TriangleJoiner {
public:
    explicit TriangleJoiner(const Trs& trs);
    TriangleJoin join(const Term& s, const Redex& left, const Redex& right) const;

private:
    const Trs& trs_;
};

}  // namespace orthokit
