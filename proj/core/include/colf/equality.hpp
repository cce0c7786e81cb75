#pragma once

// Equality of possibly-circular terms.
//
// The algorithm decides equality coinductively: before unfolding a recursive
// definition it records the current goal as an assumption, and any later goal
// that is a renaming instance of a recorded assumption closes immediately.
// Assumptions are stored with their free variables canonically renamed, so
// the instance check is a single structural pass that accumulates a variable
// correspondence.  Termination comes from the assumption set growing on every
// unfolding step and ranging over finitely many goals up to renaming.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "colf/subst.hpp"
#include "colf/syntax.hpp"

namespace colf {

// A memoized goal <theta |- lhs = rhs>, free variables canonicalized to
// "$c0", "$c1", ... in first-occurrence order.
struct equation {
  std::vector<std::string> theta;
  neutral lhs;
  neutral rhs;
};

equation canonicalize_equation(const neutral& lhs, const neutral& rhs);

// A renaming sigma with <sigma>e.lhs == lhs and <sigma>e.rhs == rhs, if one
// exists.  Renamings may be non-injective; bound variables match up to alpha.
std::optional<renaming> match_renaming(const equation& e, const neutral& lhs,
                                       const neutral& rhs);

enum class eq_verdict { equal, unequal, error };

struct eq_options {
  // Hard cap on |Delta|; hitting it means a bug (the theory guarantees a
  // finite assumption set), so it surfaces as an error verdict.
  std::size_t memo_cap = 10000;
};

struct eq_result {
  eq_verdict verdict = eq_verdict::error;
  std::string reason;               // set for unequal and error
  std::size_t max_assumptions = 0;  // peak |Delta| over the whole query
};

// Decides lhs = rhs under free variables theta.  Recursive definitions are
// read from `sig`; their bodies must be present.
eq_result equal_terms(const signature& sig, const std::vector<std::string>& theta,
                      const term& lhs, const term& rhs, const eq_options& opts = {});

// log10 of the closed-form bound on how many assumptions a query could ever
// need for this signature.  Purely informational: it is astronomically loose,
// which is why the implementation uses the memo cap instead.
double log10_equation_bound(const signature& sig);

}  // namespace colf
