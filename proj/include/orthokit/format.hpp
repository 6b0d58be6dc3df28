#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "orthokit/parallel_reduction.hpp"
#include "orthokit/rewrite.hpp"
#include "orthokit/term.hpp"

namespace orthokit {

struct SourceSpan {
    std::size_t line = 0;
    std::size_t column = 0;
    std::size_t end_line = 0;
    std::size_t end_column = 0;
};

/// Syntactic view of a `.trs` file before the rules are checked.
struct TrsDocument {
    struct RuleSource {
        std::string lhs_text;
        std::string rhs_text;
        SourceSpan span;
    };
    std::vector<std::string> var_decls;
    std::vector<RuleSource> rules_src;
};

/// Reads the `(VAR ...) (RULES ...)` subset of the COPS/TPDB format.
/// COMMENT sections are skipped; any other section is unsupported_section.
TrsDocument parse_trs_document(std::string_view text);

/// Parses and checks a `.trs` text. Arities come from first use.
Trs parse_trs(std::string_view text);

/// Term over `sig` with the declared variables. Undeclared bare identifiers
/// that are not in `sig` are unknown_symbol.
Term parse_term(std::string_view text, const Signature& sig, const std::set<std::string>& vars);
/// As parse_term, but identifiers absent from `sig` are read as variables.
Term parse_term_open(std::string_view text, const Signature& sig);

/// Variables declared by the rules of `trs`, sorted.
std::set<std::string> rule_variables(const Trs& trs);

std::string print_trs(const Trs& trs);

/// `"p:rule,..."` with substitutions inferred by matching; "" is the empty step.
ParallelStep parse_step(std::string_view text, const Trs& trs, const Term& s);
std::string print_step(const ParallelStep& step);

}  // namespace orthokit
