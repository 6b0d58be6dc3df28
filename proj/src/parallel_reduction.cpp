#include "orthokit/parallel_reduction.hpp"

#include <algorithm>
#include <numeric>

#include "orthokit/error.hpp"

namespace orthokit {

ParallelStep ParallelStep::from_redexes(std::span<const Redex> redexes) {
    std::vector<Position> positions;
    ParallelStep step;
    for (const Redex& r : redexes) {
        positions.push_back(r.position);
        step.rules.push_back(r.rule);
        step.substs.push_back(r.subst);
    }
    step.positions = PositionSeq(std::move(positions));
    return step;
}

std::vector<Redex> ParallelStep::to_redexes() const {
    std::vector<Redex> out;
    for (std::size_t i = 0; i < size(); ++i) {
        out.push_back(redex(i));
    }
    return out;
}

ParallelStep ParallelStep::sorted() const {
    auto redexes = to_redexes();
    std::sort(redexes.begin(), redexes.end(),
              [](const Redex& a, const Redex& b) { return a.position < b.position; });
    return from_redexes(redexes);
}

Term replace_terms(const Term& s, std::span<const Term> terms, const PositionSeq& positions) {
    if (terms.size() != positions.size()) {
        throw Error(ErrorKind::length_mismatch, std::to_string(terms.size()) + " terms for " +
                                                    std::to_string(positions.size()) + " positions");
    }
    if (!is_pp(positions)) {
        throw Error(ErrorKind::not_parallel, "replacement positions overlap");
    }
    Term out = s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!is_position_of(s, positions[i])) {
            throw Error(ErrorKind::invalid_position, positions[i].to_string() + " in " + to_string(s));
        }
        out = replace_term(out, terms[i], positions[i]);
    }
    return out;
}

void check_step(const Trs& trs, const Term& s, const ParallelStep& step) {
    if (step.rules.size() != step.positions.size() || step.substs.size() != step.positions.size()) {
        throw Error(ErrorKind::invalid_step, "positions, rules and substitutions differ in length");
    }
    if (!is_pp(step.positions)) {
        throw Error(ErrorKind::invalid_step, "positions are not pairwise parallel");
    }
    for (std::size_t i = 0; i < step.size(); ++i) {
        const Position& p = step.positions[i];
        if (!is_position_of(s, p)) {
            throw Error(ErrorKind::invalid_step, p.to_string() + " is not a position of " + to_string(s));
        }
        if (step.rules[i] >= trs.size()) {
            throw Error(ErrorKind::invalid_step, "no rule " + std::to_string(step.rules[i]));
        }
        const Rule& rule = trs.rule(step.rules[i]);
        if (apply_subst(step.substs[i], rule.lhs) != subterm_at(s, p)) {
            throw Error(ErrorKind::invalid_step, "rule " + std::to_string(rule.id) + " with " +
                                                     step.substs[i].to_string() + " does not match at " +
                                                     p.to_string());
        }
    }
}

Term apply_parallel(const Trs& trs, const Term& s, const ParallelStep& step) {
    check_step(trs, s, step);
    Term out = s;
    for (std::size_t i = 0; i < step.size(); ++i) {
        out = replace_term(out, apply_subst(step.substs[i], trs.rule(step.rules[i]).rhs), step.positions[i]);
    }
    return out;
}

namespace {

// Include/exclude search over the redex list, keeping chosen positions
// pairwise parallel. Exclusion is explored first so the empty step leads.
class StepEnumerator {
public:
    StepEnumerator(const Trs& trs, const Term& s, std::size_t cap)
        : trs_(trs), subject_(s), redexes_(redexes(trs, s)), cap_(cap) {}

    std::vector<ParallelReduct> run() {
        visit(0);
        return std::move(out_);
    }

private:
    void visit(std::size_t next) {
        if (next == redexes_.size()) {
            emit();
            return;
        }
        visit(next + 1);
        const Redex& r = redexes_[next];
        bool compatible = std::all_of(chosen_.begin(), chosen_.end(), [&](std::size_t c) {
            return pos_parallel(redexes_[c].position, r.position);
        });
        if (compatible) {
            chosen_.push_back(next);
            visit(next + 1);
            chosen_.pop_back();
        }
    }

    void emit() {
        if (out_.size() == cap_) {
            throw Error(ErrorKind::cap_exceeded, "more than " + std::to_string(cap_) + " parallel steps from " +
                                                     to_string(subject_));
        }
        std::vector<Redex> picked;
        for (std::size_t c : chosen_) {
            picked.push_back(redexes_[c]);
        }
        ParallelStep step = ParallelStep::from_redexes(picked);
        Term result = subject_;
        for (const Redex& r : picked) {
            result = replace_term(result, apply_subst(r.subst, trs_.rule(r.rule).rhs), r.position);
        }
        out_.push_back(ParallelReduct{std::move(step), std::move(result)});
    }

    const Trs& trs_;
    const Term& subject_;
    std::vector<Redex> redexes_;
    std::size_t cap_;
    std::vector<std::size_t> chosen_;
    std::vector<ParallelReduct> out_;
};

}  // namespace

std::vector<ParallelReduct> parallel_reducts_bounded(const Trs& trs, const Term& s, std::size_t cap) {
    return StepEnumerator(trs, s, cap).run();
}

std::set<Term> parallel_reduct_terms(const Trs& trs, const Term& s, std::size_t cap) {
    std::set<Term> out;
    for (ParallelReduct& r : parallel_reducts_bounded(trs, s, cap)) {
        out.insert(std::move(r.result));
    }
    return out;
}

bool is_parallel_reduction(const Trs& trs, const Term& s, const Term& t, std::size_t cap) {
    return parallel_reduct_terms(trs, s, cap).contains(t);
}

ParallelStep lift_single(const Trs& trs, const Term& s, const Redex& r) {
    check_redex(trs, s, r);
    return ParallelStep::from_redexes(std::span<const Redex>(&r, 1));
}

std::vector<Redex> serialize(const Trs& trs, const Term& s, const ParallelStep& step) {
    try {
        check_step(trs, s, step);
    } catch (const Error& e) {
        throw Error(ErrorKind::invalid_step, e.what());
    }
    // Parallel positions keep each later redex intact, so the original
    // position/rule/substitution triples remain valid in every intermediate term.
    return step.to_redexes();
}

}  // namespace orthokit
