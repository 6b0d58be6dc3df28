#include "orthokit/term.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include "orthokit/error.hpp"

namespace orthokit {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_position: return "invalid-position";
        case ErrorKind::invalid_rule_id: return "invalid-rule-id";
        case ErrorKind::length_mismatch: return "length-mismatch";
        case ErrorKind::duplicate_position: return "duplicate-position";
        case ErrorKind::not_parallel: return "not-parallel";
        case ErrorKind::invalid_step: return "invalid-step";
        case ErrorKind::invalid_redex: return "invalid-redex";
        case ErrorKind::invalid_geometry: return "invalid-geometry";
        case ErrorKind::arity_mismatch: return "arity-mismatch";
        case ErrorKind::cap_exceeded: return "cap-exceeded";
        case ErrorKind::not_orthogonal: return "not-orthogonal";
        case ErrorKind::overlap_violation: return "overlap-violation";
        case ErrorKind::joined_check: return "joined-check";
        case ErrorKind::precondition_violated: return "precondition-violated";
        case ErrorKind::no_constant: return "no-constant";
        case ErrorKind::generation_exhausted: return "generation-exhausted";
        case ErrorKind::parse_error: return "parse-error";
        case ErrorKind::arity_conflict: return "arity-conflict";
        case ErrorKind::var_as_lhs: return "var-as-lhs";
        case ErrorKind::unbound_rhs_var: return "unbound-rhs-var";
        case ErrorKind::unknown_symbol: return "unknown-symbol";
        case ErrorKind::unsupported_section: return "unsupported-section";
    }
    return "unknown-error";
}

// ---------------------------------------------------------------- Position

Position::Position(std::initializer_list<std::size_t> steps) : Position(std::vector<std::size_t>(steps)) {}

Position::Position(std::vector<std::size_t> steps) : steps_(std::move(steps)) {
    for (std::size_t s : steps_) {
        if (s == 0) {
            throw Error(ErrorKind::invalid_position, "argument indices are 1-based");
        }
    }
}

Position Position::parse(std::string_view text) {
    if (text == "e") {
        return {};
    }
    std::vector<std::size_t> steps;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = text.find('.', start);
        std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value == 0) {
            throw Error(ErrorKind::parse_error, "bad position '" + std::string(text) + "'");
        }
        steps.push_back(value);
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return Position(std::move(steps));
}

Position Position::child(std::size_t index) const {
    auto steps = steps_;
    steps.push_back(index);
    return Position(std::move(steps));
}

Position Position::concat(const Position& suffix) const {
    auto steps = steps_;
    steps.insert(steps.end(), suffix.steps_.begin(), suffix.steps_.end());
    Position out;
    out.steps_ = std::move(steps);
    return out;
}

Position Position::drop(std::size_t n) const {
    Position out;
    if (n < steps_.size()) {
        out.steps_.assign(steps_.begin() + static_cast<std::ptrdiff_t>(n), steps_.end());
    }
    return out;
}

bool Position::is_prefix_of(const Position& other) const noexcept {
    return steps_.size() <= other.steps_.size() &&
           std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

std::string Position::to_string() const {
    if (steps_.empty()) {
        return "e";
    }
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i != 0) {
            out += '.';
        }
        out += std::to_string(steps_[i]);
    }
    return out;
}

// ---------------------------------------------------------------- Term

struct Term::Node {
    bool is_var;
    std::string name;
    std::vector<Term> args;
    std::size_t size;
    std::size_t depth;
    std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
    std::size_t h = mix(0x5157ULL, std::hash<std::string>{}(name));
    return Term(std::make_shared<const Node>(Node{true, std::move(name), {}, 1, 1, h}));
}

Term Term::apply(std::string head, std::vector<Term> args) {
    std::size_t size = 1;
    std::size_t depth = 0;
    std::size_t h = mix(0xa99ULL, std::hash<std::string>{}(head));
    for (const Term& a : args) {
        size += a.size();
        depth = std::max(depth, a.depth());
        h = mix(h, a.hash());
    }
    return Term(std::make_shared<const Node>(Node{false, std::move(head), std::move(args), size, depth + 1, h}));
}

bool Term::is_variable() const noexcept { return node_->is_var; }
const std::string& Term::symbol() const noexcept { return node_->name; }
std::span<const Term> Term::args() const noexcept { return node_->args; }
std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::depth() const noexcept { return node_->depth; }
std::size_t Term::hash() const noexcept { return node_->hash; }

bool operator==(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.hash() != b.hash() || a.size() != b.size() || a.is_variable() != b.is_variable() ||
        a.symbol() != b.symbol() || a.arity() != b.arity()) {
        return false;
    }
    return std::equal(a.args().begin(), a.args().end(), b.args().begin());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (a.is_variable() != b.is_variable()) {
        return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = a.symbol() <=> b.symbol(); c != 0) {
        return c;
    }
    if (auto c = a.arity() <=> b.arity(); c != 0) {
        return c;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (auto c = a.arg(i) <=> b.arg(i); c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

namespace {

void print(std::string& out, const Term& t) {
    out += t.symbol();
    if (t.is_variable() || t.arity() == 0) {
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i != 0) {
            out += ',';
        }
        print(out, t.arg(i));
    }
    out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
    std::string out;
    print(out, t);
    return out;
}

// ---------------------------------------------------------------- Signature

Signature::Signature(std::initializer_list<std::pair<std::string, std::size_t>> symbols) {
    for (const auto& [name, arity] : symbols) {
        add(name, arity);
    }
}

void Signature::add(const std::string& name, std::size_t arity) {
    if (name.empty()) {
        throw Error(ErrorKind::parse_error, "empty symbol name");
    }
    auto [it, inserted] = symbols_.emplace(name, arity);
    if (!inserted && it->second != arity) {
        throw Error(ErrorKind::arity_conflict, "symbol '" + name + "' used with arity " + std::to_string(arity) +
                                                   " and " + std::to_string(it->second));
    }
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool Signature::has_constant() const {
    return std::any_of(symbols_.begin(), symbols_.end(), [](const auto& kv) { return kv.second == 0; });
}

Term Signature::app(const std::string& head, std::vector<Term> args) const {
    auto ar = arity(head);
    if (!ar) {
        throw Error(ErrorKind::unknown_symbol, "'" + head + "'");
    }
    if (*ar != args.size()) {
        throw Error(ErrorKind::arity_mismatch, "'" + head + "' expects " + std::to_string(*ar) + " arguments, got " +
                                                   std::to_string(args.size()));
    }
    return Term::apply(head, std::move(args));
}

void Signature::validate(const Term& t) const {
    if (t.is_variable()) {
        if (contains(t.symbol())) {
            throw Error(ErrorKind::parse_error, "'" + t.symbol() + "' is both a variable and a symbol");
        }
        return;
    }
    auto ar = arity(t.symbol());
    if (!ar) {
        throw Error(ErrorKind::unknown_symbol, "'" + t.symbol() + "'");
    }
    if (*ar != t.arity()) {
        throw Error(ErrorKind::arity_mismatch, "'" + t.symbol() + "' expects " + std::to_string(*ar) +
                                                   " arguments, got " + std::to_string(t.arity()));
    }
    for (const Term& a : t.args()) {
        validate(a);
    }
}

bool Signature::admits(const Term& t) const {
    try {
        validate(t);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// ---------------------------------------------------------------- Substitution

const Term* Substitution::find(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::value_of(const std::string& var) const {
    if (const Term* t = find(var)) {
        return *t;
    }
    return Term::variable(var);
}

std::string Substitution::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, t] : bindings_) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += x + "->" + orthokit::to_string(t);
    }
    return out + "}";
}

// ---------------------------------------------------------------- operations

namespace {

void collect_vars(const Term& t, std::vector<std::string>& seen) {
    if (t.is_variable()) {
        if (std::find(seen.begin(), seen.end(), t.symbol()) == seen.end()) {
            seen.push_back(t.symbol());
        }
        return;
    }
    for (const Term& a : t.args()) {
        collect_vars(a, seen);
    }
}

void collect_positions(const Term& t, std::vector<std::size_t>& path, std::vector<Position>& out) {
    out.emplace_back(path);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        collect_positions(t.arg(i), path, out);
        path.pop_back();
    }
}

void collect_var_positions(const Term& t, const std::string& var, std::vector<std::size_t>& path,
                           std::vector<Position>& out) {
    if (t.is_variable()) {
        if (t.symbol() == var) {
            out.emplace_back(path);
        }
        return;
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        collect_var_positions(t.arg(i), var, path, out);
        path.pop_back();
    }
}

Term replace_from(const Term& s, const Term& replacement, const Position& p, std::size_t depth) {
    if (depth == p.length()) {
        return replacement;
    }
    std::size_t index = p[depth];
    if (s.is_variable() || index > s.arity()) {
        throw Error(ErrorKind::invalid_position, p.to_string() + " in " + to_string(s));
    }
    std::vector<Term> args(s.args().begin(), s.args().end());
    args[index - 1] = replace_from(args[index - 1], replacement, p, depth + 1);
    return Term::apply(s.symbol(), std::move(args));
}

}  // namespace

std::set<std::string> vars(const Term& t) {
    auto ordered = vars_in_order(t);
    return {ordered.begin(), ordered.end()};
}

std::vector<std::string> vars_in_order(const Term& t) {
    std::vector<std::string> seen;
    collect_vars(t, seen);
    return seen;
}

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    out.reserve(t.size());
    std::vector<std::size_t> path;
    collect_positions(t, path, out);
    return out;
}

std::vector<Position> pos_var(const Term& t, const std::string& var) {
    std::vector<Position> out;
    std::vector<std::size_t> path;
    collect_var_positions(t, var, path, out);
    return out;
}

bool is_position_of(const Term& t, const Position& p) noexcept {
    const Term* cur = &t;
    for (std::size_t step : p.steps()) {
        if (cur->is_variable() || step > cur->arity()) {
            return false;
        }
        cur = &cur->arg(step - 1);
    }
    return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::size_t step : p.steps()) {
        if (cur->is_variable() || step > cur->arity()) {
            throw Error(ErrorKind::invalid_position, p.to_string() + " in " + to_string(t));
        }
        cur = &cur->arg(step - 1);
    }
    return *cur;
}

Term replace_term(const Term& s, const Term& replacement, const Position& p) {
    return replace_from(s, replacement, p, 0);
}

Term apply_subst(const Substitution& sigma, const Term& t) {
    if (sigma.empty()) {
        return t;
    }
    if (t.is_variable()) {
        const Term* bound = sigma.find(t.symbol());
        return bound ? *bound : t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) {
        args.push_back(apply_subst(sigma, a));
    }
    return Term::apply(t.symbol(), std::move(args));
}

bool linear(const Term& t) {
    std::vector<std::string> seen;
    std::function<bool(const Term&)> walk = [&](const Term& u) {
        if (u.is_variable()) {
            if (std::find(seen.begin(), seen.end(), u.symbol()) != seen.end()) {
                return false;
            }
            seen.push_back(u.symbol());
            return true;
        }
        return std::all_of(u.args().begin(), u.args().end(), walk);
    };
    return walk(t);
}

}  // namespace orthokit
