#pragma once

// Surface-to-core elaboration.
//
// Turns parsed declarations into a core signature the kernel will accept:
//
//   * free capitalized identifiers in constructor and family classifiers
//     become implicit pi binders (first-occurrence order), recorded in the
//     declaration's implicit_args so use sites insert that many arguments;
//   * holes and inserted implicit arguments become metavariables, solved by
//     pattern unification; unification compares terms up to unfolding of
//     recursive definitions, with a memo of assumed equations, so inferred
//     arguments can be pinned against circular terms;
//   * metavariables still unsolved at the end of a classifier are generalized
//     into additional leading implicit binders when their types are closed;
//   * recursive definitions get every pi of their type flavored as a renaming
//     binder, their use sites get renaming arguments, and lambdas binding
//     variables used as renaming arguments are marked, which is what lets the
//     kernel accept eta-contracted aliases of such definitions;
//   * all binders are renamed apart across the output signature.
//
// Elaboration is two-pass like the kernel: classifiers of every declaration
// first, then definition bodies in order.  Equality during a body may unfold
// only definitions whose bodies are already elaborated; needing a later body
// is reported as an error.

#include <string>
#include <vector>

#include "colf/equality.hpp"
#include "colf/parser.hpp"
#include "colf/syntax.hpp"
#include "colf/typecheck.hpp"

namespace colf {

struct elab_options {
  eq_options equality;
};

struct elab_result {
  signature sig;  // successfully elaborated declarations only
  std::vector<decl_report> verdicts;
  std::vector<diagnostic> diagnostics;
  std::size_t max_assumptions = 0;  // peak assumption-set size over unification
  bool ok() const;
};

elab_result elaborate(const std::vector<surface_decl>& decls, const elab_options& opts = {});

// Capitalized identifiers occurring free in a classifier that do not resolve
// against the visible prefix of the signature, in first-occurrence order.
std::vector<std::string> free_implicit_names(const sexpr& classifier, const signature& sig,
                                             std::size_t from);

// Every pi of a recursive definition's type, made renaming-flavored.
ctype_ptr flip_prepattern(const ctype& a);

// Marks each lambda whose variable occurs as a renaming argument in its body.
term_ptr mark_renaming_lams(const term& m);

}  // namespace colf
