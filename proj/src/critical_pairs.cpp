#include "orthokit/critical_pairs.hpp"

#include <algorithm>

namespace orthokit {

namespace {

Term rename(const Term& t, const std::string& suffix) {
    if (t.is_variable()) {
        return Term::variable(t.symbol() + suffix);
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) {
        args.push_back(rename(a, suffix));
    }
    return Term::apply(t.symbol(), std::move(args));
}

Rule rename(const Rule& r, const std::string& suffix) { return Rule{r.id, rename(r.lhs, suffix), rename(r.rhs, suffix)}; }

bool occurs(const std::string& x, const Term& t) {
    if (t.is_variable()) {
        return t.symbol() == x;
    }
    return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return occurs(x, a); });
}

}  // namespace

std::pair<Rule, Rule> rename_apart(const Rule& first, const Rule& second) {
    std::string first_suffix = "#" + std::to_string(first.id);
    std::string second_suffix = "#" + std::to_string(second.id);
    if (second_suffix == first_suffix) {
        second_suffix += "'";
    }
    Rule a = rename(first, first_suffix);
    Rule b = rename(second, second_suffix);
    // Source names may already contain '#'; keep priming until disjoint.
    auto a_vars = vars(a.lhs);
    auto clashes = [&] {
        auto b_vars = vars(b.lhs);
        return std::any_of(b_vars.begin(), b_vars.end(), [&](const std::string& x) { return a_vars.contains(x); });
    };
    while (clashes()) {
        second_suffix += "'";
        b = rename(second, second_suffix);
    }
    return {std::move(a), std::move(b)};
}

// Martelli-Montanari: repeatedly pick an equation and apply delete,
// decompose, orient, or eliminate until the problem is empty.
std::optional<Substitution> unify(Equations problem) {
    Substitution solved;
    while (!problem.empty()) {
        auto [s, t] = std::move(problem.back());
        problem.pop_back();
        if (s == t) {
            continue;
        }
        if (!s.is_variable() && !t.is_variable()) {
            if (s.symbol() != t.symbol() || s.arity() != t.arity()) {
                return std::nullopt;
            }
            for (std::size_t i = 0; i < s.arity(); ++i) {
                problem.emplace_back(s.arg(i), t.arg(i));
            }
            continue;
        }
        if (!s.is_variable()) {
            std::swap(s, t);
        }
        const std::string x = s.symbol();
        if (occurs(x, t)) {
            return std::nullopt;
        }
        Substitution elim{{x, t}};
        for (auto& [l, r] : problem) {
            l = apply_subst(elim, l);
            r = apply_subst(elim, r);
        }
        Substitution next;
        for (const auto& [y, u] : solved.bindings()) {
            next.bind(y, apply_subst(elim, u));
        }
        next.bind(x, t);
        solved = std::move(next);
    }
    return solved;
}

std::optional<Substitution> mgu(const Term& a, const Term& b) { return unify({{a, b}}); }

std::vector<CriticalPair> critical_pairs_between(const Rule& outer, const Rule& inner) {
    auto [o, i] = rename_apart(outer, inner);
    std::vector<CriticalPair> out;
    for (const Position& p : positions(o.lhs)) {
        const Term& sub = subterm_at(o.lhs, p);
        if (sub.is_variable() || (outer.id == inner.id && p.is_root())) {
            continue;
        }
        auto sigma = mgu(sub, i.lhs);
        if (!sigma) {
            continue;
        }
        Term left = apply_subst(*sigma, replace_term(o.lhs, i.rhs, p));
        Term right = apply_subst(*sigma, o.rhs);
        bool trivial = left == right;
        Term peak = apply_subst(*sigma, o.lhs);
        CriticalPair cp{outer.id, inner.id, p, std::move(*sigma), std::move(left), std::move(right), trivial,
                        std::move(peak)};
        out.push_back(std::move(cp));
    }
    return out;
}

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
    std::vector<CriticalPair> out;
    for (const Rule& outer : trs.rules()) {
        for (const Rule& inner : trs.rules()) {
            auto cps = critical_pairs_between(outer, inner);
            out.insert(out.end(), std::make_move_iterator(cps.begin()), std::make_move_iterator(cps.end()));
        }
    }
    return out;
}

}  // namespace orthokit
