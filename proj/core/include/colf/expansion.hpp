#pragma once

// Finite approximants of possibly-infinite unfoldings.
//
// expand(sig, M, k) unfolds every recursive definition it meets and cuts the
// tree off at depth k, yielding a finite approximant with bottom at the cut
// points.  Depth is spent once when passing from a head to its arguments;
// lambdas and unfolding steps are free.  Two terms are equal iff all their
// approximants agree, which makes this the oracle the equality engine is
// tested against.

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "colf/syntax.hpp"

namespace colf {

struct bohm;
using bohm_ptr = std::shared_ptr<const bohm>;

struct bohm_bottom {};

struct bohm_lam {
  std::string var;
  bohm_ptr body;
};

// A prepattern argument [x]; zero-size leaf, never cut off.
struct bohm_leaf {
  std::string var;
};

using bohm_arg = std::variant<bohm_ptr, bohm_leaf>;

// Head is a variable or constructor; recursion constants never survive
// expansion.
struct bohm_head {
  head h;
  std::vector<bohm_arg> args;
};

struct bohm : std::variant<bohm_bottom, bohm_lam, bohm_head> {
  using variant::variant;
};

struct expansion_error : std::runtime_error {
  enum class reason {
    unknown_constant,
    non_prepattern_spine,
    non_contractive,
    fuel_exhausted,  // consecutive unfoldings exceeded the definition count: a bug
  };
  reason why;
  expansion_error(reason r, const std::string& msg) : std::runtime_error(msg), why(r) {}
};

bohm_ptr expand(const signature& sig, const term& m, int depth);

// Alpha equivalence of approximants.
bool approx_equal(const bohm& a, const bohm& b);

// Depth-k cut of an existing approximant, with the same depth accounting as
// expand; expand(sig, m, j) == truncate(expand(sig, m, k), j) for j <= k.
bohm_ptr truncate(const bohm& b, int depth);

// Indented tree rendering; bottom prints as _|_ .
std::string print_bohm(const bohm& b);

}  // namespace colf
