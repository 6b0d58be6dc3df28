#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orthokit {

/// Failure categories. Every library error carries one of these so callers
/// (and the CLI exit-code mapping) can branch on the kind, not the message.
enum class ErrorKind {
    invalid_position,
    invalid_rule_id,
    length_mismatch,
    duplicate_position,
    not_parallel,
    invalid_step,
    invalid_redex,
    invalid_geometry,
    arity_mismatch,
    cap_exceeded,
    not_orthogonal,
    overlap_violation,
    joined_check,
    precondition_violated,
    no_constant,
    generation_exhausted,
    parse_error,
    arity_conflict,
    var_as_lhs,
    unbound_rhs_var,
    unknown_symbol,
    unsupported_section,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    /// Source-annotated error (parsers). Line and column are 1-based.
    Error(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(std::string(to_string(kind)) + " at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          kind_(kind), line_(line), column_(column) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    bool has_location() const noexcept { return line_ != 0; }

private:
    ErrorKind kind_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

}  // namespace orthokit
