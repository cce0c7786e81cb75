#pragma once

// Surface syntax: what the grammar produces, before implicit-argument
// elaboration and conversion to core terms.
//
//   decl  := name ':' expr ('=' expr)? '.'
//   expr  := '{' x (':' expr)? '}' expr | '[' x ']' expr | app ('->' expr)?
//   app   := atom+
//   atom  := ident | 'type' | 'cotype' | '_' | '(' expr ')'
//
// Arrows associate to the right.  Parse errors skip to the next '.' and
// continue, so one bad declaration does not hide the rest of the file.

#include <memory>
#include <string>
#include <vector>

#include "colf/lexer.hpp"
#include "colf/source.hpp"

namespace colf {

struct sexpr;
using sexpr_ptr = std::shared_ptr<const sexpr>;

struct sexpr {
  enum class node { ident, hole, app, arrow, pi, lam } tag = node::ident;
  std::string name;             // ident: the identifier; pi/lam: the binder
  bool implicit_binder = false; // pi inserted by implicit abstraction
  std::vector<sexpr_ptr> kids;  // app: fn then args; arrow: [lhs, rhs];
                                // pi: [domain?, body] (domain may be null for {x} B);
                                // lam: [body]
  source_span span;
};

struct surface_decl {
  std::string name;
  sexpr_ptr classifier;  // the expression after ':'
  sexpr_ptr body;        // null unless the declaration has '= M'
  source_span span;
};

struct parse_result {
  std::vector<surface_decl> decls;
  std::vector<diagnostic> errors;
  bool ok() const { return errors.empty(); }
};

parse_result parse_signature(std::string_view text);

// Structural comparison ignoring spans; used by round-trip tests.
bool sexpr_equal(const sexpr& a, const sexpr& b);
bool surface_equal(const surface_decl& a, const surface_decl& b);

sexpr_ptr mk_sexpr(sexpr e);

}  // namespace colf
