#include "orthokit/format.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "orthokit/error.hpp"

namespace orthokit {

namespace {

enum class TokenKind { lparen, rparen, comma, arrow, ident, end };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
    std::size_t offset;
};

bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token tok{TokenKind::end, "", line_, column_, pos_};
        if (pos_ >= text_.size()) {
            return tok;
        }
        char c = text_[pos_];
        if (c == '(' || c == ')' || c == ',') {
            tok.kind = c == '(' ? TokenKind::lparen : c == ')' ? TokenKind::rparen : TokenKind::comma;
            tok.text = std::string(1, c);
            advance();
            return tok;
        }
        if (text_.substr(pos_, 2) == "->") {
            tok.kind = TokenKind::arrow;
            tok.text = "->";
            advance();
            advance();
            return tok;
        }
        tok.kind = TokenKind::ident;
        while (pos_ < text_.size() && !is_delimiter(text_[pos_]) && text_.substr(pos_, 2) != "->") {
            tok.text += text_[pos_];
            advance();
        }
        return tok;
    }

    std::size_t offset() const noexcept { return pos_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// Token stream with one-token lookahead.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text), lexer_(text) { current_ = lexer_.next(); }

    const Token& peek() const noexcept { return current_; }
    Token take() {
        Token t = current_;
        last_end_line_ = lexer_.line();
        last_end_column_ = lexer_.column();
        current_ = lexer_.next();
        return t;
    }
    Token expect(TokenKind kind, const char* what) {
        if (current_.kind != kind) {
            fail(std::string("expected ") + what + ", found " + describe(current_));
        }
        return take();
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorKind::parse_error, message, current_.line, current_.column);
    }
    std::string_view slice(std::size_t from, std::size_t to) const { return text_.substr(from, to - from); }
    std::size_t last_end_line() const noexcept { return last_end_line_; }
    std::size_t last_end_column() const noexcept { return last_end_column_; }

    static std::string describe(const Token& t) {
        return t.kind == TokenKind::end ? std::string("end of input") : "'" + t.text + "'";
    }

private:
    std::string_view text_;
    Lexer lexer_;
    Token current_;
    std::size_t last_end_line_ = 1;
    std::size_t last_end_column_ = 1;
};

// Raw syntax tree with source locations, resolved against a signature later.
struct RawTerm {
    std::string name;
    bool has_args = false;
    std::vector<RawTerm> args;
    std::size_t line = 0;
    std::size_t column = 0;
};

RawTerm parse_raw(Parser& p) {
    Token head = p.expect(TokenKind::ident, "identifier");
    RawTerm out{head.text, false, {}, head.line, head.column};
    if (p.peek().kind != TokenKind::lparen) {
        return out;
    }
    p.take();
    out.has_args = true;
    if (p.peek().kind == TokenKind::rparen) {
        p.take();
        return out;
    }
    while (true) {
        out.args.push_back(parse_raw(p));
        if (p.peek().kind == TokenKind::comma) {
            p.take();
            continue;
        }
        p.expect(TokenKind::rparen, "',' or ')'");
        return out;
    }
}

enum class IdentPolicy { declared_only, open };

// Resolves identifiers: declared variables, then signature symbols (or, when
// `infer` is set, new symbols with the arity of first use).
struct Resolver {
    Signature* infer = nullptr;
    const Signature* fixed = nullptr;
    const std::set<std::string>* vars = nullptr;
    IdentPolicy policy = IdentPolicy::declared_only;

    Term resolve(const RawTerm& raw) const {
        bool is_var = vars && vars->contains(raw.name);
        if (!is_var && policy == IdentPolicy::open && !raw.has_args && fixed && !fixed->contains(raw.name)) {
            is_var = true;
        }
        if (is_var) {
            if (raw.has_args) {
                throw Error(ErrorKind::parse_error, "variable '" + raw.name + "' applied to arguments", raw.line,
                            raw.column);
            }
            return Term::variable(raw.name);
        }
        std::vector<Term> args;
        for (const RawTerm& a : raw.args) {
            args.push_back(resolve(a));
        }
        if (infer) {
            try {
                infer->add(raw.name, args.size());
            } catch (const Error&) {
                throw Error(ErrorKind::arity_conflict,
                            "'" + raw.name + "' used with " + std::to_string(args.size()) +
                                " arguments but declared with " + std::to_string(*infer->arity(raw.name)),
                            raw.line, raw.column);
            }
            return Term::apply(raw.name, std::move(args));
        }
        auto arity = fixed->arity(raw.name);
        if (!arity) {
            throw Error(ErrorKind::unknown_symbol, "'" + raw.name + "'", raw.line, raw.column);
        }
        if (*arity != args.size()) {
            throw Error(ErrorKind::arity_mismatch,
                        "'" + raw.name + "' expects " + std::to_string(*arity) + " arguments, got " +
                            std::to_string(args.size()),
                        raw.line, raw.column);
        }
        return Term::apply(raw.name, std::move(args));
    }
};

struct ParsedRule {
    RawTerm lhs;
    RawTerm rhs;
    TrsDocument::RuleSource source;
};

struct ParsedDocument {
    TrsDocument doc;
    std::vector<ParsedRule> rules;
};

void skip_balanced(Parser& p) {
    std::size_t depth = 1;
    while (depth > 0) {
        const Token& t = p.peek();
        if (t.kind == TokenKind::end) {
            p.fail("unterminated section");
        }
        if (t.kind == TokenKind::lparen) {
            ++depth;
        } else if (t.kind == TokenKind::rparen) {
            --depth;
        }
        p.take();
    }
}

ParsedDocument parse_document(std::string_view text) {
    Parser p(text);
    ParsedDocument out;
    bool seen_rules = false;
    while (p.peek().kind != TokenKind::end) {
        p.expect(TokenKind::lparen, "'('");
        Token name = p.expect(TokenKind::ident, "section name");
        if (name.text == "VAR") {
            if (seen_rules) {
                throw Error(ErrorKind::parse_error, "VAR section must precede RULES", name.line, name.column);
            }
            while (p.peek().kind == TokenKind::ident) {
                out.doc.var_decls.push_back(p.take().text);
            }
            p.expect(TokenKind::rparen, "')' closing VAR");
        } else if (name.text == "RULES") {
            seen_rules = true;
            while (p.peek().kind == TokenKind::ident) {
                Token first = p.peek();
                RawTerm lhs = parse_raw(p);
                std::size_t lhs_end = p.peek().offset;
                p.expect(TokenKind::arrow, "'->'");
                std::size_t rhs_start = p.peek().offset;
                RawTerm rhs = parse_raw(p);
                std::size_t rhs_end = p.peek().offset;
                SourceSpan span{first.line, first.column, p.last_end_line(), p.last_end_column()};
                auto trim = [](std::string_view v) {
                    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) {
                        v.remove_suffix(1);
                    }
                    return std::string(v);
                };
                TrsDocument::RuleSource src{trim(p.slice(first.offset, lhs_end)), trim(p.slice(rhs_start, rhs_end)),
                                            span};
                out.doc.rules_src.push_back(src);
                out.rules.push_back(ParsedRule{std::move(lhs), std::move(rhs), src});
            }
            p.expect(TokenKind::rparen, "')' closing RULES");
        } else if (name.text == "COMMENT") {
            skip_balanced(p);
        } else {
            throw Error(ErrorKind::unsupported_section, "section '" + name.text + "'", name.line, name.column);
        }
    }
    return out;
}

}  // namespace

TrsDocument parse_trs_document(std::string_view text) { return parse_document(text).doc; }

Trs parse_trs(std::string_view text) {
    ParsedDocument parsed = parse_document(text);
    std::set<std::string> vars(parsed.doc.var_decls.begin(), parsed.doc.var_decls.end());
    Signature sig;
    Resolver resolver{&sig, nullptr, &vars, IdentPolicy::declared_only};
    std::vector<std::pair<Term, Term>> rules;
    for (const ParsedRule& r : parsed.rules) {
        Term lhs = resolver.resolve(r.lhs);
        Term rhs = resolver.resolve(r.rhs);
        try {
            check_rule(lhs, rhs);
        } catch (const Error& e) {
            throw Error(e.kind(), to_string(lhs) + " -> " + to_string(rhs), r.source.span.line,
                        r.source.span.column);
        }
        rules.emplace_back(std::move(lhs), std::move(rhs));
    }
    return Trs::from_rules(std::move(sig), rules);
}

namespace {

Term parse_with(std::string_view text, const Resolver& resolver) {
    Parser p(text);
    RawTerm raw = parse_raw(p);
    if (p.peek().kind != TokenKind::end) {
        p.fail("unexpected " + Parser::describe(p.peek()) + " after term");
    }
    return resolver.resolve(raw);
}

}  // namespace

Term parse_term(std::string_view text, const Signature& sig, const std::set<std::string>& vars) {
    return parse_with(text, Resolver{nullptr, &sig, &vars, IdentPolicy::declared_only});
}

Term parse_term_open(std::string_view text, const Signature& sig) {
    return parse_with(text, Resolver{nullptr, &sig, nullptr, IdentPolicy::open});
}

std::set<std::string> rule_variables(const Trs& trs) {
    std::set<std::string> out;
    for (const Rule& r : trs.rules()) {
        auto v = vars(r.lhs);
        out.insert(v.begin(), v.end());
    }
    return out;
}

std::string print_trs(const Trs& trs) {
    std::string out;
    std::set<std::string> vs = rule_variables(trs);
    if (!vs.empty()) {
        out = "(VAR";
        for (const std::string& x : vs) {
            out += " " + x;
        }
        out += ")\n";
    }
    out += "(RULES\n";
    for (const Rule& r : trs.rules()) {
        out += "  " + to_string(r.lhs) + " -> " + to_string(r.rhs) + "\n";
    }
    return out + ")\n";
}

ParallelStep parse_step(std::string_view text, const Trs& trs, const Term& s) {
    std::vector<Redex> redexes;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw Error(ErrorKind::parse_error, "step item '" + std::string(item) + "' is not position:rule");
        }
        Position p = Position::parse(item.substr(0, colon));
        std::string_view rule_text = item.substr(colon + 1);
        std::size_t rule_id = 0;
        auto [ptr, ec] = std::from_chars(rule_text.data(), rule_text.data() + rule_text.size(), rule_id);
        if (rule_text.empty() || ec != std::errc{} || ptr != rule_text.data() + rule_text.size()) {
            throw Error(ErrorKind::parse_error, "bad rule id '" + std::string(rule_text) + "'");
        }
        const Rule& rule = trs.rule(rule_id);
        if (!is_position_of(s, p)) {
            throw Error(ErrorKind::invalid_step, p.to_string() + " is not a position of " + to_string(s));
        }
        auto sigma = match(rule.lhs, subterm_at(s, p));
        if (!sigma) {
            throw Error(ErrorKind::invalid_step,
                        "rule " + std::to_string(rule_id) + " does not match at " + p.to_string());
        }
        redexes.push_back(Redex{p, rule_id, std::move(*sigma)});
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    try {
        return ParallelStep::from_redexes(redexes);
    } catch (const Error& e) {
        throw Error(ErrorKind::invalid_step, e.what());
    }
}

std::string print_step(const ParallelStep& step) {
    std::string out;
    for (std::size_t i = 0; i < step.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += step.positions[i].to_string() + ":" + std::to_string(step.rules[i]);
    }
    return out;
}

}  // namespace orthokit
