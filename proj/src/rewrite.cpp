#include "orthokit/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "orthokit/error.hpp"

namespace orthokit {

void check_rule(const Term& lhs, const Term& rhs) {
    if (lhs.is_variable()) {
        throw Error(ErrorKind::var_as_lhs, to_string(lhs) + " -> " + to_string(rhs));
    }
    auto lhs_vars = vars(lhs);
    for (const auto& x : vars(rhs)) {
        if (!lhs_vars.contains(x)) {
            throw Error(ErrorKind::unbound_rhs_var,
                        "'" + x + "' in " + to_string(lhs) + " -> " + to_string(rhs));
        }
    }
}

namespace {

void infer_symbols(Signature& sig, const Term& t) {
    if (t.is_variable()) {
        return;
    }
    sig.add(t.symbol(), t.arity());
    for (const Term& a : t.args()) {
        infer_symbols(sig, a);
    }
}

}  // namespace

Trs Trs::from_rules(const std::vector<std::pair<Term, Term>>& rules) {
    Signature sig;
    for (const auto& [l, r] : rules) {
        infer_symbols(sig, l);
        infer_symbols(sig, r);
    }
    return from_rules(std::move(sig), rules);
}

Trs Trs::from_rules(Signature signature, const std::vector<std::pair<Term, Term>>& rules) {
    Trs trs(std::move(signature));
    for (const auto& [l, r] : rules) {
        trs.add_rule(l, r);
    }
    return trs;
}

std::size_t Trs::add_rule(const Term& lhs, const Term& rhs) {
    check_rule(lhs, rhs);
    signature_.validate(lhs);
    signature_.validate(rhs);
    std::size_t id = rules_.size();
    rules_.push_back(Rule{id, lhs, rhs});
    return id;
}

const Rule& Trs::rule(std::size_t id) const {
    if (id >= rules_.size()) {
        throw Error(ErrorKind::invalid_rule_id, std::to_string(id));
    }
    return rules_[id];
}

Trs Trs::without_rule(std::size_t id) const {
    Trs out(signature_);
    for (const Rule& r : rules_) {
        if (r.id != id) {
            out.add_rule(r.lhs, r.rhs);
        }
    }
    return out;
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
    if (pattern.is_variable()) {
        if (const Term* bound = sigma.find(pattern.symbol())) {
            return *bound == subject;
        }
        sigma.bind(pattern.symbol(), subject);
        return true;
    }
    if (subject.is_variable() || pattern.symbol() != subject.symbol() || pattern.arity() != subject.arity()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match_into(pattern.arg(i), subject.arg(i), sigma)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    Substitution sigma;
    if (!match_into(pattern, subject, sigma)) {
        return std::nullopt;
    }
    return sigma;
}

std::optional<Term> reduce_at(const Trs& trs, const Term& s, const Position& p, std::size_t rule_id) {
    const Rule& rule = trs.rule(rule_id);
    const Term& sub = subterm_at(s, p);
    auto sigma = match(rule.lhs, sub);
    if (!sigma) {
        return std::nullopt;
    }
    return replace_term(s, apply_subst(*sigma, rule.rhs), p);
}

void check_redex(const Trs& trs, const Term& s, const Redex& r) {
    if (r.rule >= trs.size()) {
        throw Error(ErrorKind::invalid_redex, "no rule " + std::to_string(r.rule));
    }
    if (!is_position_of(s, r.position)) {
        throw Error(ErrorKind::invalid_redex, r.position.to_string() + " is not a position of " + to_string(s));
    }
    const Rule& rule = trs.rule(r.rule);
    auto lhs_vars = vars(rule.lhs);
    for (const auto& [x, _] : r.subst.bindings()) {
        if (!lhs_vars.contains(x)) {
            throw Error(ErrorKind::invalid_redex, "substitution binds '" + x + "' outside the lhs");
        }
    }
    if (apply_subst(r.subst, rule.lhs) != subterm_at(s, r.position)) {
        throw Error(ErrorKind::invalid_redex, "rule " + std::to_string(r.rule) + " does not match at " +
                                                  r.position.to_string() + " of " + to_string(s));
    }
}

Term contract(const Trs& trs, const Term& s, const Redex& r) {
    check_redex(trs, s, r);
    return replace_term(s, apply_subst(r.subst, trs.rule(r.rule).rhs), r.position);
}

std::vector<Redex> redexes(const Trs& trs, const Term& s) {
    std::vector<Redex> out;
    for (const Position& p : positions(s)) {
        const Term& sub = subterm_at(s, p);
        if (sub.is_variable()) {
            continue;
        }
        for (const Rule& rule : trs.rules()) {
            if (auto sigma = match(rule.lhs, sub)) {
                out.push_back(Redex{p, rule.id, std::move(*sigma)});
            }
        }
    }
    return out;
}

std::vector<Reduct> one_step_reducts(const Trs& trs, const Term& s) {
    std::vector<Reduct> out;
    for (Redex& r : redexes(trs, s)) {
        Term t = replace_term(s, apply_subst(r.subst, trs.rule(r.rule).rhs), r.position);
        out.push_back(Reduct{std::move(r), std::move(t)});
    }
    return out;
}

bool is_reduction(const Trs& trs, const Term& s, const Term& t) {
    auto reducts = one_step_reducts(trs, s);
    return std::any_of(reducts.begin(), reducts.end(), [&](const Reduct& r) { return r.result == t; });
}

std::set<Term> reachable_set(const Trs& trs, const Term& s, std::size_t depth, std::size_t node_cap) {
    std::unordered_set<Term, TermHash> seen{s};
    std::vector<Term> frontier{s};
    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<Term> next;
        for (const Term& t : frontier) {
            for (Reduct& r : one_step_reducts(trs, t)) {
                if (seen.insert(r.result).second) {
                    if (seen.size() > node_cap) {
                        throw Error(ErrorKind::cap_exceeded,
                                    "more than " + std::to_string(node_cap) + " reachable terms from " + to_string(s));
                    }
                    next.push_back(std::move(r.result));
                }
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

namespace {

// Leftmost-innermost redex: the first redex in post-order whose lhs matches.
std::optional<Term> innermost_step(const Trs& trs, const Term& t) {
    if (t.is_variable()) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (auto reduced = innermost_step(trs, t.arg(i))) {
            std::vector<Term> args(t.args().begin(), t.args().end());
            args[i] = std::move(*reduced);
            return Term::apply(t.symbol(), std::move(args));
        }
    }
    for (const Rule& rule : trs.rules()) {
        if (auto sigma = match(rule.lhs, t)) {
            return apply_subst(*sigma, rule.rhs);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Term> normalize(const Trs& trs, const Term& s, std::size_t fuel) {
    Term current = s;
    for (std::size_t step = 0; step <= fuel; ++step) {
        auto next = innermost_step(trs, current);
        if (!next) {
            return current;
        }
        if (step == fuel) {
            break;
        }
        current = std::move(*next);
    }
    return std::nullopt;
}

}  // namespace orthokit
