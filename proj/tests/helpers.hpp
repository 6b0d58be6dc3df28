#pragma once

#include <string>

#include "orthokit/format.hpp"
#include "orthokit/rewrite.hpp"

namespace fx {

inline const char* e1_text = "(VAR x) (RULES f(x) -> g(x) a -> b)";
inline const char* e2_text = "(VAR x) (RULES f(x) -> h(x,x) a -> b)";
inline const char* cl_text =
    "(VAR x y z)\n"
    "(RULES\n"
    "  app(app(app(S,x),y),z) -> app(app(x,z),app(y,z))\n"
    "  app(app(K,x),y) -> x\n"
    "  app(I,x) -> x\n"
    ")\n";

inline orthokit::Trs trs(const std::string& text) { return orthokit::parse_trs(text); }

/// E1 with an extra binary symbol h2 for the parallel examples.
inline orthokit::Trs e1() {
    orthokit::Trs t = trs(e1_text);
    t.signature().add("h2", 2);
    t.signature().add("c", 0);
    return t;
}

inline orthokit::Trs e2() { return trs(e2_text); }

inline orthokit::Trs cl() {
    orthokit::Trs t = trs(cl_text);
    t.signature().add("a", 0);
    return t;
}

/// Term over the TRS's signature; identifiers it lacks are variables.
inline orthokit::Term tm(const orthokit::Trs& t, const std::string& text) {
    return orthokit::parse_term_open(text, t.signature());
}

/// Signature-free term: every bare lowercase-x/y/z identifier is a variable.
inline orthokit::Term tm(const std::string& text) {
    static const orthokit::Signature sig{{"a", 0}, {"b", 0}, {"c", 0}, {"f", 1}, {"g", 1},
                                         {"h", 2}, {"h2", 2}, {"k", 3}, {"k2", 2}};
    return orthokit::parse_term_open(text, sig);
}

inline orthokit::Position pos(const std::string& text) { return orthokit::Position::parse(text); }

}  // namespace fx
