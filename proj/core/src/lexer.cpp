#include "colf/lexer.hpp"

namespace colf {

bool is_identifier_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '/' || c == '\'' || c == '*';
}

bool is_capitalized(std::string_view ident) {
  return !ident.empty() && ident[0] >= 'A' && ident[0] <= 'Z';
}

lex_result tokenize(std::string_view text) {
  lex_result out;
  source_pos pos;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        pos.line++;
        pos.col = 1;
      } else {
        pos.col++;
      }
    }
    i += n;
  };
  auto emit = [&](token_kind kind, std::size_t len) {
    source_pos begin = pos;
    std::string s(text.substr(i, len));
    advance(len);
    out.tokens.push_back({kind, std::move(s), {begin, pos}});
  };
  auto error_at = [&](std::string msg) {
    diagnostic d;
    d.category = verdict::parse_error;
    d.judgment = "lex";
    d.message = std::move(msg);
    d.span = {pos, {pos.line, pos.col + 1}};
    out.errors.push_back(std::move(d));
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '%') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (static_cast<unsigned char>(c) > 0x7f) {
      error_at("non-ASCII byte in input");
      advance(1);
      continue;
    }
    if (is_identifier_char(c)) {
      std::size_t len = 1;
      while (i + len < text.size() && is_identifier_char(text[i + len])) len++;
      std::string_view word = text.substr(i, len);
      if (word == "_") emit(token_kind::underscore, len);
      else if (word == "type") emit(token_kind::kw_type, len);
      else if (word == "cotype") emit(token_kind::kw_cotype, len);
      else emit(token_kind::ident, len);
      continue;
    }
    switch (c) {
      case ':': emit(token_kind::colon, 1); continue;
      case '=': emit(token_kind::equal, 1); continue;
      case '.': emit(token_kind::dot, 1); continue;
      case '{': emit(token_kind::lbrace, 1); continue;
      case '}': emit(token_kind::rbrace, 1); continue;
      case '[': emit(token_kind::lbrack, 1); continue;
      case ']': emit(token_kind::rbrack, 1); continue;
      case '(': emit(token_kind::lparen, 1); continue;
      case ')': emit(token_kind::rparen, 1); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          emit(token_kind::arrow, 2);
        } else {
          error_at("stray '-' (expected '->')");
          advance(1);
        }
        continue;
      default:
        error_at(std::string("unexpected character '") + c + "'");
        advance(1);
        continue;
    }
  }
  out.tokens.push_back({token_kind::eof, "", {pos, pos}});
  return out;
}

}  // namespace colf
