#pragma once

// Validity conditions on recursive definitions.
//
// A recursive definition r : A = M is accepted when A is a prepattern type,
// M is contractive (no recursion constant at its head), and every cycle from
// r back to itself passes through a constructor set whose highest-priority
// member is coinductive.  The trace walk follows other recursive definitions'
// bodies, visiting each at most once, so it terminates.

#include <optional>
#include <string>
#include <vector>

#include "colf/syntax.hpp"

namespace colf {

// Every pi binder prepattern-flavored down to the atomic tail.
bool is_prepattern_type(const ctype& a);

// Every spine entry a prepattern variable.
bool is_prepattern_spine(const spine& s);

// Head under the lambda prefix is not a recursion constant.
bool is_contractive(const term& m);

// Does some constructor in the set have the maximal priority among the set
// and belong to a coinductive family?  Empty sets are invalid.
bool valid_trace(const signature& sig, const std::vector<std::string>& constructors);

struct guardedness_violation {
  // What went wrong, with the constructor trace from r to the offending
  // occurrence as the witness.
  enum class reason {
    invalid_trace,        // cycle r .. r with no dominating coinductive constructor
    non_prepattern_spine, // recursion constant applied to a non-variable
    non_contractive,      // definition unfolds to a recursion constant head
    unknown_constant,
  } why;
  std::vector<std::string> trace;  // constructor names, outermost first
  std::string detail;
};

// Checks the trace condition for `r = body` against the signature; the body's
// own definition entry need not be in `sig` yet.
std::optional<guardedness_violation> check_guarded(const signature& sig,
                                                   const std::string& r,
                                                   const term& body);

}  // namespace colf
