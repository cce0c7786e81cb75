#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "colf/driver.hpp"
#include "colf/elaborate.hpp"
#include "colf/parser.hpp"

namespace colf::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(COLF_CORPUS_DIR) + "/" + name;
}

inline std::string corpus_text(const std::string& name) { return read_file(corpus_path(name)); }

// Parses and elaborates; throws if anything fails.  For building known-good
// signatures inside tests.
inline signature load_signature(const std::string& text) {
  parse_result p = parse_signature(text);
  if (!p.ok()) throw std::runtime_error("parse failed: " + p.errors.front().message);
  elab_result e = elaborate(p.decls);
  if (!e.ok()) throw std::runtime_error("elaboration failed: " + e.diagnostics.front().message);
  return std::move(e.sig);
}

inline signature load_corpus_signature(const std::string& name) {
  file_report rep = check_file(corpus_path(name));
  return std::move(rep.sig);
}

// Verdict of a named declaration row, or nullopt when no row has that name.
inline std::optional<verdict> report_verdict(const file_report& rep, std::string_view name) {
  for (const decl_row& r : rep.rows) {
    if (r.name == name) return r.v;
  }
  return std::nullopt;
}

}  // namespace colf::test
