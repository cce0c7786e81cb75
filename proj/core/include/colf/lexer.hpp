#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "colf/source.hpp"

namespace colf {

enum class token_kind {
  ident,
  kw_type,
  kw_cotype,
  colon,
  equal,
  dot,
  arrow,
  lbrace,
  rbrace,
  lbrack,
  rbrack,
  lparen,
  rparen,
  underscore,
  eof,
};

struct token {
  token_kind kind = token_kind::eof;
  std::string text;
  source_span span;
};

struct lex_result {
  std::vector<token> tokens;  // always ends with an eof token
  std::vector<diagnostic> errors;
};

// Identifiers are maximal runs of [A-Za-z0-9_/'*]; a lone `_` is a hole.
// `%` starts a line comment.  Input must be ASCII; anything else is a
// located lexical error (the offending byte is skipped).
lex_result tokenize(std::string_view text);

bool is_identifier_char(char c);
bool is_capitalized(std::string_view ident);

}  // namespace colf
