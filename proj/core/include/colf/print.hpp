#pragma once

#include <string>

#include "colf/parser.hpp"
#include "colf/syntax.hpp"

namespace colf {

// Surface printing; parse(print(e)) reproduces e up to spans, and printing is
// idempotent across a parse/print cycle.
std::string print_sexpr(const sexpr& e);
std::string print_surface_decl(const surface_decl& d);

// Core printing, in the same concrete syntax (used in diagnostics and by the
// term inspection commands).
std::string print_term(const term& m);
std::string print_neutral(const neutral& r);
std::string print_type(const ctype& a);
std::string print_kind(const kind& k);

}  // namespace colf
