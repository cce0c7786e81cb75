#pragma once

// Hereditary substitution over canonical terms.
//
// Substitution is indexed by the simple-type erasure of the substituted
// variable's type; the (erasure, term) pair decreases lexicographically on
// every hereditary call, which is what makes the operation terminate.  It is
// a partial operation: substituting a non-variable term for a variable that
// occurs in prepattern position is undefined and reported as a typed error,
// never a crash.  Renaming substitution, by contrast, is total.

#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "colf/syntax.hpp"

namespace colf {

// Simple types: the erasure image of types and kinds.
struct stype;
using stype_ptr = std::shared_ptr<const stype>;

struct stype {
  // base iff from == nullptr
  stype_ptr from;
  stype_ptr to;
  int size = 1;  // node count; the termination measure
};

stype_ptr sbase();
stype_ptr sarrow(stype_ptr from, stype_ptr to);
bool stype_equal(const stype& a, const stype& b);
std::string print_stype(const stype& t);

// Erasure: atomic types collapse to the base; ordinary pi types erase
// pointwise; prepattern pi types erase their domain to the base.
stype_ptr erase(const ctype& a);
stype_ptr erase(const kind& k);

struct subst_error : std::runtime_error {
  enum class reason {
    undefined_prepat,  // non-variable substituted into prepattern position
    shape_mismatch,    // spine/type/term shapes disagree (ill-typed input)
    capture,           // renaming would capture a binder
  };
  reason why;
  subst_error(reason r, const std::string& msg) : std::runtime_error(msg), why(r) {}
};

// Simultaneous renaming x -> y, applied in a single pass.  Total on terms
// whose binders are renamed apart from the renaming's domain and codomain.
using renaming = std::unordered_map<std::string, std::string>;

term_ptr rename_term(const renaming& sigma, const term& m);
term_ptr rename_term(const std::string& to, const std::string& from, const term& m);
spine rename_spine(const renaming& sigma, const spine& s);
ctype_ptr rename_type(const renaming& sigma, const ctype& a);
kind_ptr rename_kind(const renaming& sigma, const kind& k);

// [N/x]^tau M.  When N is a bare variable y, degenerates to the total
// renaming <y/x> (this also keeps prepattern positions defined).
term_ptr hsubst_term(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                     const term& m);
spine hsubst_spine(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                   const spine& s);
ctype_ptr hsubst_type(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                      const ctype& a);
kind_ptr hsubst_kind(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                     const kind& k);

// S |>^tau M: feeds the spine to an abstraction, reducing as it goes.  The
// result of a well-typed reduction is always neutral.
neutral reduce_spine(const spine& s, const stype_ptr& tau, const term& m);

// Is this term a variable applied to nothing?  Returns the name if so.
const std::string* bare_var(const term& m);

}  // namespace colf
