#include "colf/print.hpp"

namespace colf {

namespace {

// Precedence levels: 0 = expr (binders, arrows), 1 = application, 2 = atom.
void print_se(const sexpr& e, int level, std::string& out) {
  auto paren = [&](int min_level, auto&& body) {
    bool need = level > min_level;
    if (need) out += "(";
    body();
    if (need) out += ")";
  };
  switch (e.tag) {
    case sexpr::node::ident:
      out += e.name;
      return;
    case sexpr::node::hole:
      out += "_";
      return;
    case sexpr::node::app:
      paren(1, [&] {
        print_se(*e.kids[0], 2, out);
        for (std::size_t i = 1; i < e.kids.size(); ++i) {
          out += " ";
          print_se(*e.kids[i], 2, out);
        }
      });
      return;
    case sexpr::node::arrow:
      paren(0, [&] {
        print_se(*e.kids[0], 1, out);
        out += " -> ";
        print_se(*e.kids[1], 0, out);
      });
      return;
    case sexpr::node::pi:
      paren(0, [&] {
        out += "{" + e.name;
        if (e.kids[0]) {
          out += " : ";
          print_se(*e.kids[0], 0, out);
        }
        out += "} ";
        print_se(*e.kids[1], 0, out);
      });
      return;
    case sexpr::node::lam:
      paren(0, [&] {
        out += "[" + e.name + "] ";
        print_se(*e.kids[0], 0, out);
      });
      return;
  }
}

}  // namespace

std::string print_sexpr(const sexpr& e) {
  std::string out;
  print_se(e, 0, out);
  return out;
}

std::string print_surface_decl(const surface_decl& d) {
  std::string out = d.name + " : " + print_sexpr(*d.classifier);
  if (d.body) out += " = " + print_sexpr(*d.body);
  out += ".";
  return out;
}

// -- core printers -----------------------------------------------------

namespace {

void print_tm(const term& m, int level, std::string& out);

void print_spine(const spine& s, std::string& out) {
  for (const auto& e : s) {
    out += " ";
    if (auto* t = std::get_if<term_ptr>(&e)) {
      print_tm(**t, 2, out);
    } else {
      out += std::get<prepat_arg>(e).var;
    }
  }
}

void print_ne(const neutral& r, int level, std::string& out) {
  if (r.args.empty()) {
    out += r.h.name;
    return;
  }
  bool need = level > 1;
  if (need) out += "(";
  out += r.h.name;
  print_spine(r.args, out);
  if (need) out += ")";
}

void print_tm(const term& m, int level, std::string& out) {
  if (auto* l = std::get_if<lam>(&m)) {
    bool need = level > 0;
    if (need) out += "(";
    out += "[" + l->var + "] ";
    print_tm(*l->body, 0, out);
    if (need) out += ")";
    return;
  }
  print_ne(std::get<neutral>(m), level, out);
}

void print_ty(const ctype& a, int level, std::string& out) {
  if (auto* pi = std::get_if<pi_type>(&a)) {
    bool need = level > 0;
    if (need) out += "(";
    if (occurs_free(*pi->codomain, pi->var) || pi->prepat) {
      out += "{" + pi->var + (pi->prepat ? "^" : "") + " : ";
      print_ty(*pi->domain, 0, out);
      out += "} ";
      print_ty(*pi->codomain, 0, out);
    } else {
      print_ty(*pi->domain, 1, out);
      out += " -> ";
      print_ty(*pi->codomain, 0, out);
    }
    if (need) out += ")";
    return;
  }
  const auto& at = std::get<atomic>(a);
  if (at.args.empty()) {
    out += at.family;
    return;
  }
  bool need = level > 1;
  if (need) out += "(";
  out += at.family;
  print_spine(at.args, out);
  if (need) out += ")";
}

void print_kd(const kind& k, int level, std::string& out) {
  if (auto* pi = std::get_if<kind_pi>(&k)) {
    bool need = level > 0;
    if (need) out += "(";
    out += "{" + pi->var + (pi->prepat ? "^" : "") + " : ";
    print_ty(*pi->domain, 0, out);
    out += "} ";
    print_kd(*pi->codomain, 0, out);
    if (need) out += ")";
    return;
  }
  out += std::get<kind_base>(k).coinductive ? "cotype" : "type";
}

}  // namespace

std::string print_term(const term& m) {
  std::string out;
  print_tm(m, 0, out);
  return out;
}

std::string print_neutral(const neutral& r) {
  std::string out;
  print_ne(r, 0, out);
  return out;
}

std::string print_type(const ctype& a) {
  std::string out;
  print_ty(a, 0, out);
  return out;
}

std::string print_kind(const kind& k) {
  std::string out;
  print_kd(k, 0, out);
  return out;
}

}  // namespace colf
