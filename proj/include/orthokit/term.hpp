#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orthokit {

/// Path from the root of a term to one of its subterms. Entries are 1-based
/// argument indices; the empty path is the root (printed "e").
class Position {
public:
    Position() = default;
    Position(std::initializer_list<std::size_t> steps);
    explicit Position(std::vector<std::size_t> steps);

    static Position root() { return {}; }
    /// Parses "e" or a dot-separated list such as "1.2.1".
    static Position parse(std::string_view text);

    bool is_root() const noexcept { return steps_.empty(); }
    std::size_t length() const noexcept { return steps_.size(); }
    std::size_t operator[](std::size_t i) const { return steps_[i]; }
    std::span<const std::size_t> steps() const noexcept { return steps_; }

    Position child(std::size_t index) const;
    Position concat(const Position& suffix) const;
    /// Drops the first `n` steps.
    Position drop(std::size_t n) const;

    /// True iff this is a (not necessarily proper) prefix of `other`.
    bool is_prefix_of(const Position& other) const noexcept;

    std::string to_string() const;

    friend bool operator==(const Position&, const Position&) = default;
    friend std::strong_ordering operator<=>(const Position& a, const Position& b) {
        return a.steps_ <=> b.steps_;
    }

private:
    std::vector<std::size_t> steps_;
};

/// Immutable first-order term: a variable or a function symbol applied to
/// arguments. Copies share structure; equality is syntactic.
class Term {
public:
    static Term variable(std::string name);
    static Term apply(std::string head, std::vector<Term> args = {});

    bool is_variable() const noexcept;
    /// Variable name or head symbol.
    const std::string& symbol() const noexcept;
    std::span<const Term> args() const noexcept;
    std::size_t arity() const noexcept { return args().size(); }
    const Term& arg(std::size_t index) const { return args()[index]; }

    /// Number of nodes.
    std::size_t size() const noexcept;
    std::size_t depth() const noexcept;
    std::size_t hash() const noexcept;

    friend bool operator==(const Term& a, const Term& b) noexcept;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Rendering in the `.trs` term syntax: constants bare, `f(t1,...,tn)`.
std::string to_string(const Term& t);

/// Ranked alphabet. A symbol has exactly one arity.
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<std::pair<std::string, std::size_t>> symbols);

    /// Adds a symbol; re-adding with the same arity is a no-op, with a
    /// different arity it throws arity_conflict.
    void add(const std::string& name, std::size_t arity);
    bool contains(const std::string& name) const { return symbols_.contains(name); }
    std::optional<std::size_t> arity(const std::string& name) const;
    const std::map<std::string, std::size_t>& symbols() const noexcept { return symbols_; }
    bool has_constant() const;

    /// Checked constructor: throws unknown_symbol or arity_mismatch.
    Term app(const std::string& head, std::vector<Term> args = {}) const;
    /// Throws if any application in `t` disagrees with this signature.
    void validate(const Term& t) const;
    bool admits(const Term& t) const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::map<std::string, std::size_t> symbols_;
};

/// Finite map from variables to terms; unbound variables map to themselves.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const std::string, Term>> bindings)
        : bindings_(bindings) {}

    void bind(const std::string& var, Term value) { bindings_.insert_or_assign(var, std::move(value)); }
    const Term* find(const std::string& var) const;
    /// σ(x), i.e. the variable itself when unbound.
    Term value_of(const std::string& var) const;
    bool contains(const std::string& var) const { return bindings_.contains(var); }
    bool empty() const noexcept { return bindings_.empty(); }
    std::size_t size() const noexcept { return bindings_.size(); }
    const std::map<std::string, Term>& bindings() const noexcept { return bindings_; }

    std::string to_string() const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<std::string, Term> bindings_;
};

std::set<std::string> vars(const Term& t);
/// Variables in left-to-right order of first occurrence.
std::vector<std::string> vars_in_order(const Term& t);

/// All positions in pre-order (which is lexicographic order).
std::vector<Position> positions(const Term& t);
std::vector<Position> pos_var(const Term& t, const std::string& var);
bool is_position_of(const Term& t, const Position& p) noexcept;

const Term& subterm_at(const Term& t, const Position& p);
Term replace_term(const Term& s, const Term& replacement, const Position& p);
Term apply_subst(const Substitution& sigma, const Term& t);

/// Every variable occurs exactly once.
bool linear(const Term& t);

}  // namespace orthokit
