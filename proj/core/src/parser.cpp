#include "colf/parser.hpp"

namespace colf {

sexpr_ptr mk_sexpr(sexpr e) { return std::make_shared<sexpr>(std::move(e)); }

namespace {

struct parser {
  const std::vector<token>& toks;
  std::size_t i = 0;
  std::vector<diagnostic>& errors;

  const token& peek() const { return toks[i]; }
  const token& next() { return toks[i == toks.size() - 1 ? i : i++]; }
  bool at(token_kind k) const { return peek().kind == k; }
  bool accept(token_kind k) {
    if (!at(k)) return false;
    next();
    return true;
  }

  struct parse_failure {};

  [[noreturn]] void fail(std::string msg) {
    diagnostic d;
    d.category = verdict::parse_error;
    d.judgment = "parse";
    d.message = std::move(msg);
    d.span = peek().span;
    errors.push_back(std::move(d));
    throw parse_failure{};
  }

  void skip_to_dot() {
    while (!at(token_kind::eof)) {
      if (next().kind == token_kind::dot) return;
    }
  }

  static source_span join(const source_span& a, const source_span& b) {
    return {a.begin, b.end};
  }

  bool atom_start() const {
    switch (peek().kind) {
      case token_kind::ident:
      case token_kind::kw_type:
      case token_kind::kw_cotype:
      case token_kind::underscore:
      case token_kind::lparen:
        return true;
      default:
        return false;
    }
  }

  sexpr_ptr parse_atom() {
    const token& t = peek();
    switch (t.kind) {
      case token_kind::ident:
      case token_kind::kw_type:
      case token_kind::kw_cotype: {
        next();
        sexpr e;
        e.tag = sexpr::node::ident;
        e.name = t.text;
        e.span = t.span;
        return mk_sexpr(std::move(e));
      }
      case token_kind::underscore: {
        next();
        sexpr e;
        e.tag = sexpr::node::hole;
        e.span = t.span;
        return mk_sexpr(std::move(e));
      }
      case token_kind::lparen: {
        next();
        sexpr_ptr inner = parse_expr();
        if (!accept(token_kind::rparen)) fail("expected ')'");
        return inner;
      }
      default:
        fail("expected a term");
    }
  }

  sexpr_ptr parse_app() {
    sexpr_ptr fn = parse_atom();
    if (!atom_start()) return fn;
    sexpr e;
    e.tag = sexpr::node::app;
    e.kids.push_back(fn);
    while (atom_start()) e.kids.push_back(parse_atom());
    e.span = join(e.kids.front()->span, e.kids.back()->span);
    return mk_sexpr(std::move(e));
  }

  sexpr_ptr parse_expr() {
    const token& t = peek();
    if (t.kind == token_kind::lbrace) {
      next();
      if (!at(token_kind::ident)) fail("expected binder name after '{'");
      std::string binder = next().text;
      sexpr_ptr domain;
      if (accept(token_kind::colon)) domain = parse_expr();
      if (!accept(token_kind::rbrace)) fail("expected '}'");
      sexpr_ptr body = parse_expr();
      sexpr e;
      e.tag = sexpr::node::pi;
      e.name = std::move(binder);
      e.kids = {domain, body};
      e.span = join(t.span, body->span);
      return mk_sexpr(std::move(e));
    }
    if (t.kind == token_kind::lbrack) {
      next();
      if (!at(token_kind::ident)) fail("expected binder name after '['");
      std::string binder = next().text;
      if (!accept(token_kind::rbrack)) fail("expected ']'");
      sexpr_ptr body = parse_expr();
      sexpr e;
      e.tag = sexpr::node::lam;
      e.name = std::move(binder);
      e.kids = {body};
      e.span = join(t.span, body->span);
      return mk_sexpr(std::move(e));
    }
    sexpr_ptr lhs = parse_app();
    if (accept(token_kind::arrow)) {
      sexpr_ptr rhs = parse_expr();
      sexpr e;
      e.tag = sexpr::node::arrow;
      e.kids = {lhs, rhs};
      e.span = join(lhs->span, rhs->span);
      return mk_sexpr(std::move(e));
    }
    return lhs;
  }

  void parse_decl(std::vector<surface_decl>& out) {
    if (!at(token_kind::ident)) {
      if (at(token_kind::kw_type) || at(token_kind::kw_cotype))
        fail("reserved keyword cannot be declared");
      fail("expected declaration name");
    }
    surface_decl d;
    const token& name_tok = next();
    d.name = name_tok.text;
    if (!accept(token_kind::colon)) fail("expected ':' after declaration name");
    d.classifier = parse_expr();
    if (accept(token_kind::equal)) d.body = parse_expr();
    if (!at(token_kind::dot)) fail("expected '.' at end of declaration");
    const token& dot = next();
    d.span = join(name_tok.span, dot.span);
    out.push_back(std::move(d));
  }
};

}  // namespace

parse_result parse_signature(std::string_view text) {
  parse_result out;
  lex_result lexed = tokenize(text);
  out.errors = std::move(lexed.errors);

  parser p{lexed.tokens, 0, out.errors};
  while (!p.at(token_kind::eof)) {
    try {
      p.parse_decl(out.decls);
    } catch (const parser::parse_failure&) {
      p.skip_to_dot();
    }
  }
  return out;
}

bool sexpr_equal(const sexpr& a, const sexpr& b) {
  if (a.tag != b.tag || a.name != b.name || a.implicit_binder != b.implicit_binder) return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    const sexpr* ka = a.kids[i].get();
    const sexpr* kb = b.kids[i].get();
    if ((ka == nullptr) != (kb == nullptr)) return false;
    if (ka && !sexpr_equal(*ka, *kb)) return false;
  }
  return true;
}

bool surface_equal(const surface_decl& a, const surface_decl& b) {
  if (a.name != b.name) return false;
  if ((a.classifier == nullptr) != (b.classifier == nullptr)) return false;
  if (a.classifier && !sexpr_equal(*a.classifier, *b.classifier)) return false;
  if ((a.body == nullptr) != (b.body == nullptr)) return false;
  if (a.body && !sexpr_equal(*a.body, *b.body)) return false;
  return true;
}

}  // namespace colf
