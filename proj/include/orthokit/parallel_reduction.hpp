#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orthokit/position_calculus.hpp"
#include "orthokit/rewrite.hpp"

namespace orthokit {

/// One ⇉ step: aligned sequences of parallel positions, rule ids and
/// substitutions. Validity depends on the subject term and is checked when
/// the step is applied.
struct ParallelStep {
    PositionSeq positions;
    std::vector<std::size_t> rules;
    std::vector<Substitution> substs;

    std::size_t size() const noexcept { return positions.size(); }
    bool empty() const noexcept { return positions.empty(); }
    Redex redex(std::size_t i) const { return Redex{positions[i], rules[i], substs[i]}; }

    static ParallelStep from_redexes(std::span<const Redex> redexes);
    std::vector<Redex> to_redexes() const;
    /// The same step with its triples sorted by position.
    ParallelStep sorted() const;

    friend bool operator==(const ParallelStep&, const ParallelStep&) = default;
};

/// Simultaneous replacement at pairwise-parallel positions.
Term replace_terms(const Term& s, std::span<const Term> terms, const PositionSeq& positions);

/// Throws invalid_step naming the first violated condition.
void check_step(const Trs& trs, const Term& s, const ParallelStep& step);

/// Contracts every redex of the step (folding replace_term in step order).
Term apply_parallel(const Trs& trs, const Term& s, const ParallelStep& step);

struct ParallelReduct {
    ParallelStep step;
    Term result;
};

inline constexpr std::size_t default_step_cap = 512;

/// Every step whose redexes sit at pairwise-parallel positions, the empty
/// step first. Throws cap_exceeded past `cap` steps.
std::vector<ParallelReduct> parallel_reducts_bounded(const Trs& trs, const Term& s,
                                                     std::size_t cap = default_step_cap);

/// Distinct parallel reducts only.
std::set<Term> parallel_reduct_terms(const Trs& trs, const Term& s, std::size_t cap = default_step_cap);

bool is_parallel_reduction(const Trs& trs, const Term& s, const Term& t, std::size_t cap = default_step_cap);

/// Singleton step equivalent to one rewrite step.
ParallelStep lift_single(const Trs& trs, const Term& s, const Redex& r);

/// Redexes that, contracted one after another by reduce_at, perform the step.
std::vector<Redex> serialize(const Trs& trs, const Term& s, const ParallelStep& step);

}  // namespace orthokit
