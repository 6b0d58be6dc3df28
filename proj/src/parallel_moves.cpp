#include "orthokit/parallel_moves.hpp"

#include <algorithm>

#include "orthokit/error.hpp"
#include "orthokit/orthogonality.hpp"

namespace orthokit {

Substitution sigma_update(const Substitution& sigma, const std::string& var, std::span<const Term> terms,
                          const PositionSeq& positions) {
    if (terms.size() != positions.size()) {
        throw Error(ErrorKind::length_mismatch, std::to_string(terms.size()) + " terms for " +
                                                    std::to_string(positions.size()) + " positions");
    }
    if (terms.empty()) {
        return sigma;
    }
    Substitution out = sigma;
    out.bind(var, replace_terms(sigma.value_of(var), terms, positions));
    return out;
}

Substitution sigma_prime(const Substitution& sigma, std::span<const std::string> vars,
                         const PositionSeq& var_positions, std::span<const Term> inner_terms,
                         const PositionSeq& inner_positions) {
    if (vars.size() != var_positions.size()) {
        throw Error(ErrorKind::length_mismatch, "variables and variable positions differ in length");
    }
    if (inner_terms.size() != inner_positions.size()) {
        throw Error(ErrorKind::length_mismatch, "inner terms and inner positions differ in length");
    }
    Substitution out = sigma;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const Position& at = var_positions[i];
        PositionSeq below = sub_pos_le(inner_positions, at);
        PositionSeq suffixes = complement_pos_le(at, inner_positions);
        std::vector<Term> chosen = choose_seq(below, inner_positions, inner_terms);
        Term binding = sigma.value_of(vars[i]);
        for (const Position& q : suffixes) {
            if (!is_position_of(binding, q)) {
                throw Error(ErrorKind::invalid_geometry, q.to_string() + " is outside " + vars[i] + " = " +
                                                             to_string(binding));
            }
        }
        Substitution updated = sigma_update(sigma, vars[i], chosen, suffixes);
        if (!chosen.empty()) {
            out.bind(vars[i], updated.value_of(vars[i]));
        }
    }
    return out;
}

NestedDecomposition decompose_nested(const Trs& trs, const Term& s, const Redex& outer, const ParallelStep& inner) {
    if (!left_linear(trs)) {
        throw Error(ErrorKind::precondition_violated, "nested decomposition needs a left-linear TRS");
    }
    check_redex(trs, s, outer);
    const Term& lhs = trs.rule(outer.rule).lhs;

    NestedDecomposition out{outer.position, outer.rule, outer.subst, {}};
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const Position& q = inner.positions[i];
        if (!pos_leq(outer.position, q)) {
            continue;
        }
        Position rel = q.drop(outer.position.length());
        const Term* cur = &lhs;
        std::size_t depth = 0;
        while (!cur->is_variable() && depth < rel.length()) {
            cur = &cur->arg(rel[depth] - 1);
            ++depth;
        }
        if (!cur->is_variable()) {
            throw Error(ErrorKind::overlap_violation,
                        "redex at " + q.to_string() + " overlaps the pattern of rule " + std::to_string(outer.rule) +
                            " at " + outer.position.to_string());
        }
        Position var_pos(std::vector<std::size_t>(rel.steps().begin(), rel.steps().begin() + depth));
        NestedDecomposition::Entry entry{rel.drop(depth), inner.rules[i], inner.substs[i]};
        auto group = std::find_if(out.groups.begin(), out.groups.end(),
                                  [&](const auto& g) { return g.var_pos_in_lhs == var_pos; });
        if (group == out.groups.end()) {
            out.groups.push_back({cur->symbol(), var_pos, {std::move(entry)}});
        } else {
            group->entries.push_back(std::move(entry));
        }
    }
    std::sort(out.groups.begin(), out.groups.end(),
              [](const auto& a, const auto& b) { return a.var_pos_in_lhs < b.var_pos_in_lhs; });
    return out;
}

namespace {

std::vector<Term> contracta(const Trs& trs, const ParallelStep& step) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < step.size(); ++i) {
        out.push_back(apply_subst(step.substs[i], trs.rule(step.rules[i]).rhs));
    }
    return out;
}

// Collects the join for one side's outer redexes. `own` is the outer side,
// `other` the side whose redexes may be nested below. Contractions of the
// outer redex (with σ′) are applied on the other side's result; residuals of
// the nested redexes are applied on the outer side's result.
struct JoinBuilder {
    const Trs& trs;
    const Term& subject;
    std::vector<Position> top_positions;
    std::vector<Term> top_terms;

    void close_outer(const Redex& outer, const ParallelStep& other, std::span<const Term> other_contracta,
                     std::vector<Redex>& on_own_result, std::vector<Redex>& on_other_result) {
        NestedDecomposition nested = decompose_nested(trs, subject, outer, other);
        const Rule& rule = trs.rule(outer.rule);

        std::vector<std::string> lhs_vars = vars_in_order(rule.lhs);
        std::vector<Position> var_positions;
        for (const std::string& x : lhs_vars) {
            var_positions.push_back(outer.position.concat(pos_var(rule.lhs, x).front()));
        }
        Substitution updated = sigma_prime(outer.subst, lhs_vars, PositionSeq(std::move(var_positions)),
                                           other_contracta, other.positions);

        top_positions.push_back(outer.position);
        top_terms.push_back(apply_subst(updated, rule.rhs));
        on_other_result.push_back(Redex{outer.position, outer.rule, updated});

        for (const auto& group : nested.groups) {
            for (const Position& occurrence : pos_var(rule.rhs, group.var)) {
                for (const auto& entry : group.entries) {
                    on_own_result.push_back(
                        Redex{outer.position.concat(occurrence).concat(entry.suffix), entry.inner_rule,
                              entry.inner_subst});
                }
            }
        }
    }
};

std::string divergence_context(const Term& s, const ParallelStep& left, const ParallelStep& right) {
    auto describe = [](const ParallelStep& step) {
        std::string out;
        for (std::size_t i = 0; i < step.size(); ++i) {
            out += (i ? "," : "") + step.positions[i].to_string() + ":" + std::to_string(step.rules[i]);
        }
        return "[" + out + "]";
    };
    return "s=" + to_string(s) + " left=" + describe(left) + " right=" + describe(right);
}

JoinWitness join_unchecked(const Trs& trs, const Term& s, const ParallelStep& left, const ParallelStep& right) {
    Term t1 = apply_parallel(trs, s, left);
    Term t2 = apply_parallel(trs, s, right);
    std::vector<Term> left_contracta = contracta(trs, left);
    std::vector<Term> right_contracta = contracta(trs, right);

    JoinBuilder builder{trs, s, {}, {}};
    std::vector<Redex> from_left;
    std::vector<Redex> from_right;

    PositionSeq right_outer = pos_over(right.positions, left.positions);
    PositionSeq left_outer = pos_over(left.positions, right.positions);

    for (std::size_t i = 0; i < right.size(); ++i) {
        const Position& p = right.positions[i];
        std::size_t j = index_of(left.positions, p);
        if (j < left.size()) {
            if (left_contracta[j] != right_contracta[i]) {
                throw Error(ErrorKind::overlap_violation, "different contracta at " + p.to_string() + ": " +
                                                              divergence_context(s, left, right));
            }
            builder.top_positions.push_back(p);
            builder.top_terms.push_back(right_contracta[i]);
        } else if (index_of(right_outer, p) < right_outer.size()) {
            builder.close_outer(right.redex(i), left, left_contracta, from_right, from_left);
        }
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
        const Position& p = left.positions[i];
        if (index_of(right.positions, p) == right.size() && index_of(left_outer, p) < left_outer.size()) {
            builder.close_outer(left.redex(i), right, right_contracta, from_left, from_right);
        }
    }

    Term u = replace_terms(s, builder.top_terms, PositionSeq(builder.top_positions));
    JoinWitness witness{t1, t2, u, ParallelStep::from_redexes(from_left).sorted(),
                        ParallelStep::from_redexes(from_right).sorted()};

    Term via_left = apply_parallel(trs, t1, witness.step_from_left);
    Term via_right = apply_parallel(trs, t2, witness.step_from_right);
    if (via_left != u || via_right != u) {
        throw Error(ErrorKind::joined_check, divergence_context(s, left, right) + " u=" + to_string(u) +
                                                 " via_left=" + to_string(via_left) +
                                                 " via_right=" + to_string(via_right));
    }
    return witness;
}

}  // namespace

DivergenceJoiner::DivergenceJoiner(const Trs& trs) : trs_(trs) {
    if (!orthogonal(trs)) {
        throw Error(ErrorKind::not_orthogonal, "parallel divergences are only joined for orthogonal systems");
    }
}

JoinWitness DivergenceJoiner::join(const Term& s, const ParallelStep& left, const ParallelStep& right) const {
    return join_unchecked(trs_, s, left, right);
}

JoinWitness join_parallel_divergence(const Trs& trs, const Term& s, const ParallelStep& left,
                                     const ParallelStep& right) {
    return DivergenceJoiner(trs).join(s, left, right);
}

TriangleJoiner::TriangleJoiner(const Trs& trs) : trs_(trs) {
    if (!linear_trs(trs) || ambiguous(trs)) {
        throw Error(ErrorKind::precondition_violated, "triangle joins need a linear, non-ambiguous TRS");
    }
}

TriangleJoin TriangleJoiner::join(const Term& s, const Redex& left, const Redex& right) const {
    ParallelStep left_step = lift_single(trs_, s, left);
    ParallelStep right_step = lift_single(trs_, s, right);
    JoinWitness w = join_unchecked(trs_, s, left_step, right_step);
    if (w.step_from_left.size() > 1 || w.step_from_right.size() > 1) {
        throw Error(ErrorKind::joined_check, "linear system produced a multi-redex residual step: " +
                                                 divergence_context(s, left_step, right_step));
    }
    TriangleJoin out{w.left_term, w.right_term, w.join_term, std::nullopt, std::nullopt};
    if (!w.step_from_left.empty()) {
        out.step_from_left = w.step_from_left.redex(0);
    }
    if (!w.step_from_right.empty()) {
        out.step_from_right = w.step_from_right.redex(0);
    }
    return out;
}

TriangleJoin triangle_join(const Trs& trs, const Term& s, const Redex& left, const Redex& right) {
    return TriangleJoiner(trs).join(s, left, right);
}

}  // namespace orthokit
