#pragma once

#include <string>
#include <vector>

namespace colf {

// 1-based line/column positions; column counts bytes, input is ASCII only.
struct source_pos {
  int line = 1;
  int col = 1;
  bool operator==(const source_pos&) const = default;
};

struct source_span {
  source_pos begin;
  source_pos end;  // exclusive column of the last token's end
  bool operator==(const source_span&) const = default;
};

std::string to_string(const source_pos& p);
std::string to_string(const source_span& s);

// Per-declaration outcome categories, also used as machine-report verdicts.
enum class verdict {
  ok,
  parse_error,
  type_error,
  guardedness_error,
  prepattern_error,
};

const char* verdict_name(verdict v);

struct diagnostic {
  verdict category = verdict::type_error;
  std::string decl;      // declaration the failure is attributed to; may be empty
  std::string judgment;  // short tag for the judgment or stage that failed
  std::string message;
  source_span span;
  std::vector<std::string> notes;  // cause chain, outermost first
};

std::string format_diagnostic(const diagnostic& d, const std::string& filename);

}  // namespace colf
