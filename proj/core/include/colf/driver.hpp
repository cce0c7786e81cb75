#pragma once

// One-call pipeline over a source file: parse, elaborate, kernel-check.
//
// Produces a per-declaration verdict table plus merged diagnostics.  The
// machine report is a stable tab-separated rendering of that table, and
// expectation files (lines of `name<TAB>verdict`) can be checked against it.

#include <string>
#include <vector>

#include "colf/elaborate.hpp"
#include "colf/typecheck.hpp"

namespace colf {

struct driver_options {
  check_options check;
};

struct decl_row {
  std::string name;
  verdict v = verdict::ok;
  source_span span;
};

struct file_report {
  std::vector<decl_row> rows;  // one per parsed declaration, in order
  std::vector<diagnostic> diagnostics;
  signature sig;  // elaborated declarations that survived
  std::size_t max_assumptions = 0;
  bool ok() const;
};

file_report check_text(std::string_view text, const driver_options& opts = {});
// Throws std::runtime_error when the file cannot be read.
file_report check_file(const std::string& path, const driver_options& opts = {});

// Stable tab-separated table: parse failures without a declaration first
// (name "-"), then one `name<TAB>verdict<TAB>span` line per declaration.
std::string machine_report(const file_report& rep);

struct expect_entry {
  std::string name;
  std::string verdict_str;
};

// Lines of `name<TAB>verdict`; '#' starts a comment, blank lines skipped.
std::vector<expect_entry> parse_expectations(std::string_view text);

// Mismatch descriptions, empty when the report matches the expectations
// exactly (same declarations, same verdicts).
std::vector<std::string> compare_expectations(const file_report& rep,
                                              const std::vector<expect_entry>& expected);

// The constant fully applied to lambda-bound variables: [x1]..[xn] c x1..xn,
// with renaming arguments where the telescope asks for them and bound
// variables of function type expanded recursively.  Null for unknown names
// and type families.
term_ptr eta_expand_constant(const signature& sig, const std::string& name);

}  // namespace colf
