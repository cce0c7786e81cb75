#pragma once

// Bidirectional checking of canonical signatures.
//
// Checking runs in two passes over the declarations.  The first pass checks
// every classifier (kinds of families, types of constructors and recursive
// definitions) against the strictly preceding prefix, and checks each
// recursive definition's discipline: its type binds only renaming arguments,
// its body is contractive, and every cycle through recursion constants is
// dominated by a coinductive constructor.  The second pass checks recursive
// definition bodies, where recursion constants may refer forward.
//
// Each declaration gets its own verdict; a failure is recorded and checking
// proceeds with the next declaration.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "colf/equality.hpp"
#include "colf/source.hpp"
#include "colf/syntax.hpp"

namespace colf {

struct check_options {
  eq_options equality;
};

struct check_error : std::runtime_error {
  verdict category;
  check_error(verdict c, const std::string& msg) : std::runtime_error(msg), category(c) {}
};

struct decl_report {
  std::string name;
  verdict v = verdict::ok;
};

struct check_result {
  std::vector<decl_report> verdicts;  // declaration order
  std::vector<diagnostic> diagnostics;
  std::size_t max_assumptions = 0;  // peak assumption-set size over all equality queries
  bool ok() const;
  verdict verdict_for(std::string_view name) const;  // ok if the name is unknown
};

check_result check_signature(const signature& sig, const check_options& opts = {});

// Single-judgment interface, used by tests and the elaborator.  All judgments
// throw check_error on failure.  `from` is the number of visible leading
// declarations; pass sig.size() to make everything visible.
class checker {
 public:
  explicit checker(const signature& sig, check_options opts = {});

  void set_site(ref_site s) { site_ = s; }

  void check_kind(context& g, const kind& k, std::size_t from);
  void check_type(context& g, const ctype& a, std::size_t from);
  void check_term(context& g, const term& m, const ctype& a, std::size_t from);

  // Structural type equality: matching pi flavors, equal domains, and
  // corecursive equality of atomic-type argument spines.
  bool types_equal(const std::vector<std::string>& theta, const ctype& a, const ctype& b);

  std::size_t max_assumptions() const { return max_assumptions_; }

 private:
  ctype_ptr spine_against_type(context& g, const spine& s, ctype_ptr a, std::size_t from,
                               const std::string& head_name);
  void spine_against_kind(context& g, const spine& s, kind_ptr k, std::size_t from,
                          const std::string& family);
  const decl* resolve_or_throw(const std::string& name, std::size_t from);
  void require_equal_types(context& g, const ctype& a, const ctype& b, const std::string& what);
  bool spines_equal(const std::vector<std::string>& theta, const spine& a, const spine& b);

  const signature& sig_;
  check_options opts_;
  ref_site site_ = ref_site::declaration;
  std::size_t max_assumptions_ = 0;
  std::size_t fresh_ = 0;
};

}  // namespace colf
