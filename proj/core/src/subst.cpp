#include "colf/subst.hpp"

#include <cassert>

namespace colf {

stype_ptr sbase() {
  static const stype_ptr b = std::make_shared<stype>();
  return b;
}

stype_ptr sarrow(stype_ptr from, stype_ptr to) {
  int size = 1 + from->size + to->size;
  return std::make_shared<stype>(stype{std::move(from), std::move(to), size});
}

bool stype_equal(const stype& a, const stype& b) {
  if ((a.from == nullptr) != (b.from == nullptr)) return false;
  if (!a.from) return true;
  return stype_equal(*a.from, *b.from) && stype_equal(*a.to, *b.to);
}

std::string print_stype(const stype& t) {
  if (!t.from) return "*";
  std::string lhs = print_stype(*t.from);
  if (t.from->from) lhs = "(" + lhs + ")";
  return lhs + " -> " + print_stype(*t.to);
}

stype_ptr erase(const ctype& a) {
  if (auto* pi = std::get_if<pi_type>(&a)) {
    stype_ptr dom = pi->prepat ? sbase() : erase(*pi->domain);
    return sarrow(dom, erase(*pi->codomain));
  }
  return sbase();
}

stype_ptr erase(const kind& k) {
  if (auto* pi = std::get_if<kind_pi>(&k)) {
    stype_ptr dom = pi->prepat ? sbase() : erase(*pi->domain);
    return sarrow(dom, erase(*pi->codomain));
  }
  return sbase();
}

// -- renaming ---------------------------------------------------------------

namespace {

const std::string* lookup(const renaming& sigma, const std::string& v) {
  auto it = sigma.find(v);
  return it == sigma.end() ? nullptr : &it->second;
}

// Binders shadow domain entries; a binder that appears in the codomain would
// capture, which renamed-apart inputs rule out.
void check_binder(const renaming& sigma, const std::string& binder) {
  for (const auto& [from, to] : sigma) {
    (void)from;
    if (to == binder)
      throw subst_error(subst_error::reason::capture,
                        "renaming would capture binder '" + binder + "'");
  }
}

renaming without(const renaming& sigma, const std::string& binder) {
  renaming out = sigma;
  out.erase(binder);
  return out;
}

}  // namespace

spine rename_spine(const renaming& sigma, const spine& s) {
  spine out;
  out.reserve(s.size());
  for (const auto& e : s) {
    if (auto* t = std::get_if<term_ptr>(&e)) {
      out.push_back(term_arg(rename_term(sigma, **t)));
    } else {
      const auto& p = std::get<prepat_arg>(e);
      const std::string* to = lookup(sigma, p.var);
      out.push_back(pat_arg(to ? *to : p.var));
    }
  }
  return out;
}

term_ptr rename_term(const renaming& sigma, const term& m) {
  if (sigma.empty()) return std::make_shared<term>(m);
  if (auto* l = std::get_if<lam>(&m)) {
    check_binder(sigma, l->var);
    if (sigma.count(l->var)) {
      renaming inner = without(sigma, l->var);
      return make_lam(l->var, rename_term(inner, *l->body), l->prepat_marked);
    }
    return make_lam(l->var, rename_term(sigma, *l->body), l->prepat_marked);
  }
  const auto& r = std::get<neutral>(m);
  head h = r.h;
  if (h.tag == head_kind::variable) {
    if (const std::string* to = lookup(sigma, h.name)) h.name = *to;
  }
  return make_neutral(std::move(h), rename_spine(sigma, r.args));
}

term_ptr rename_term(const std::string& to, const std::string& from, const term& m) {
  renaming sigma;
  sigma.emplace(from, to);
  return rename_term(sigma, m);
}

ctype_ptr rename_type(const renaming& sigma, const ctype& a) {
  if (sigma.empty()) return std::make_shared<ctype>(a);
  if (auto* pi = std::get_if<pi_type>(&a)) {
    check_binder(sigma, pi->var);
    ctype_ptr dom = rename_type(sigma, *pi->domain);
    if (sigma.count(pi->var)) {
      renaming inner = without(sigma, pi->var);
      return make_pi(pi->var, dom, rename_type(inner, *pi->codomain), pi->prepat);
    }
    return make_pi(pi->var, dom, rename_type(sigma, *pi->codomain), pi->prepat);
  }
  const auto& at = std::get<atomic>(a);
  return make_atomic(at.family, rename_spine(sigma, at.args));
}

kind_ptr rename_kind(const renaming& sigma, const kind& k) {
  if (sigma.empty()) return std::make_shared<kind>(k);
  if (auto* pi = std::get_if<kind_pi>(&k)) {
    check_binder(sigma, pi->var);
    ctype_ptr dom = rename_type(sigma, *pi->domain);
    if (sigma.count(pi->var)) {
      renaming inner = without(sigma, pi->var);
      return make_kind_pi(pi->var, dom, rename_kind(inner, *pi->codomain), pi->prepat);
    }
    return make_kind_pi(pi->var, dom, rename_kind(sigma, *pi->codomain), pi->prepat);
  }
  return std::make_shared<kind>(k);
}

// -- hereditary substitution -----------------------------------------------

const std::string* bare_var(const term& m) {
  if (auto* r = std::get_if<neutral>(&m)) {
    if (r->h.tag == head_kind::variable && r->args.empty()) return &r->h.name;
  }
  return nullptr;
}

spine hsubst_spine(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                   const spine& s) {
  spine out;
  out.reserve(s.size());
  for (const auto& e : s) {
    if (auto* t = std::get_if<term_ptr>(&e)) {
      out.push_back(term_arg(hsubst_term(n, x, tau, **t)));
    } else {
      const auto& p = std::get<prepat_arg>(e);
      if (p.var != x) {
        out.push_back(e);
      } else if (const std::string* y = bare_var(*n)) {
        out.push_back(pat_arg(*y));
      } else {
        throw subst_error(subst_error::reason::undefined_prepat,
                          "cannot substitute non-variable term for prepattern variable '" +
                              x + "'");
      }
    }
  }
  return out;
}

term_ptr hsubst_term(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                     const term& m) {
  // A bare variable substituend is exactly a renaming; taking that route keeps
  // prepattern positions (and eta-short variable occurrences) defined.
  if (const std::string* y = bare_var(*n)) return rename_term(*y, x, m);

  if (auto* l = std::get_if<lam>(&m)) {
    if (l->var == x)
      throw subst_error(subst_error::reason::shape_mismatch,
                        "binder shadows substituted variable '" + x + "'");
    return make_lam(l->var, hsubst_term(n, x, tau, *l->body), l->prepat_marked);
  }
  const auto& r = std::get<neutral>(m);
  if (r.h.tag == head_kind::variable && r.h.name == x) {
    spine s = hsubst_spine(n, x, tau, r.args);
    return make_neutral(reduce_spine(s, tau, *n));
  }
  return make_neutral(r.h, hsubst_spine(n, x, tau, r.args));
}

ctype_ptr hsubst_type(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                      const ctype& a) {
  if (auto* pi = std::get_if<pi_type>(&a)) {
    if (pi->var == x)
      throw subst_error(subst_error::reason::shape_mismatch,
                        "pi binder shadows substituted variable '" + x + "'");
    return make_pi(pi->var, hsubst_type(n, x, tau, *pi->domain),
                   hsubst_type(n, x, tau, *pi->codomain), pi->prepat);
  }
  const auto& at = std::get<atomic>(a);
  return make_atomic(at.family, hsubst_spine(n, x, tau, at.args));
}

kind_ptr hsubst_kind(const term_ptr& n, const std::string& x, const stype_ptr& tau,
                     const kind& k) {
  if (auto* pi = std::get_if<kind_pi>(&k)) {
    if (pi->var == x)
      throw subst_error(subst_error::reason::shape_mismatch,
                        "kind binder shadows substituted variable '" + x + "'");
    return make_kind_pi(pi->var, hsubst_type(n, x, tau, *pi->domain),
                        hsubst_kind(n, x, tau, *pi->codomain), pi->prepat);
  }
  return std::make_shared<kind>(k);
}

neutral reduce_spine(const spine& s, const stype_ptr& tau, const term& m) {
  if (s.empty()) {
    if (auto* r = std::get_if<neutral>(&m)) return *r;
    throw subst_error(subst_error::reason::shape_mismatch,
                      "empty spine fed to an abstraction");
  }
  if (auto* r = std::get_if<neutral>(&m)) {
    // Eta-short neutral applied further: appending is what the eta-long form
    // would have produced.  Only reachable through solved metavariables.
    neutral out = *r;
    out.args.insert(out.args.end(), s.begin(), s.end());
    return out;
  }
  if (!tau->from)
    throw subst_error(subst_error::reason::shape_mismatch,
                      "spine longer than the erasure of its type");
  const auto& l = std::get<lam>(m);
  spine rest(s.begin() + 1, s.end());
  if (auto* t = std::get_if<term_ptr>(&s.front())) {
    assert(tau->from->size < tau->size);  // hereditary call at a smaller type
    term_ptr body = hsubst_term(*t, l.var, tau->from, *l.body);
    return reduce_spine(rest, tau->to, *body);
  }
  const auto& p = std::get<prepat_arg>(s.front());
  term_ptr body = rename_term(p.var, l.var, *l.body);
  return reduce_spine(rest, tau->to, *body);
}

}  // namespace colf
