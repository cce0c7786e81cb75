#include "colf/elaborate.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>

#include "colf/lexer.hpp"
#include "colf/print.hpp"
#include "colf/subst.hpp"
#include "colf/validity.hpp"

namespace colf {

namespace {

bool is_meta_name(std::string_view s) { return !s.empty() && s[0] == '?'; }

struct elab_error_ex : std::runtime_error {
  verdict category;
  source_span span;
  elab_error_ex(verdict c, const std::string& msg, source_span sp)
      : std::runtime_error(msg), category(c), span(sp) {}
};

// A metavariable over the binders that were in scope at its creation; its
// occurrences apply it to exactly those variables, so solutions can always be
// transported by renaming.
struct meta_entry {
  std::string name;  // "?N" for terms, "?tN" for types
  bool is_type = false;
  std::vector<std::string> params;  // enclosing binders, outermost first
  ctype_ptr type;                   // term metas: expected type, scoped over params
  term_ptr term_sol;                // solution body, over params
  ctype_ptr type_sol;               // solution body, over params
  std::string hint;                 // binder-name hint for generalization
  source_span span;
  bool solved() const { return term_sol != nullptr || type_sol != nullptr; }
};

const std::string* entry_var(const spine_entry& e) {
  if (const auto* pa = std::get_if<prepat_arg>(&e)) return &pa->var;
  return bare_var(**std::get_if<term_ptr>(&e));
}

bool is_kind_tail(const sexpr& e) {
  const sexpr* cur = &e;
  for (;;) {
    switch (cur->tag) {
      case sexpr::node::pi:
      case sexpr::node::arrow:
        cur = cur->kids[1].get();
        break;
      case sexpr::node::ident:
        return cur->name == "type" || cur->name == "cotype";
      default:
        return false;
    }
  }
}

void collect_free_caps(const sexpr& e, const signature& sig, std::size_t from,
                       std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (e.tag) {
    case sexpr::node::ident: {
      if (e.name == "type" || e.name == "cotype") return;
      if (!is_capitalized(e.name)) return;
      if (std::find(bound.begin(), bound.end(), e.name) != bound.end()) return;
      if (resolve(sig, e.name, ref_site::declaration, from) != nullptr) return;
      if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
      return;
    }
    case sexpr::node::hole:
      return;
    case sexpr::node::app:
    case sexpr::node::arrow:
      for (const auto& k : e.kids) {
        if (k) collect_free_caps(*k, sig, from, bound, out);
      }
      return;
    case sexpr::node::pi:
      if (e.kids[0]) collect_free_caps(*e.kids[0], sig, from, bound, out);
      bound.push_back(e.name);
      collect_free_caps(*e.kids[1], sig, from, bound, out);
      bound.pop_back();
      return;
    case sexpr::node::lam:
      bound.push_back(e.name);
      collect_free_caps(*e.kids[0], sig, from, bound, out);
      bound.pop_back();
      return;
  }
}

sexpr_ptr wrap_implicit_binders(const sexpr_ptr& classifier, const std::vector<std::string>& names) {
  sexpr_ptr out = classifier;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    sexpr p;
    p.tag = sexpr::node::pi;
    p.name = *it;
    p.implicit_binder = true;
    p.kids = {nullptr, out};
    p.span = classifier->span;
    out = mk_sexpr(std::move(p));
  }
  return out;
}

// -- prepattern flavor inference --------------------------------------------

bool occurs_as_renaming(const term& m, const std::string& var) {
  if (const auto* l = std::get_if<lam>(&m)) {
    if (l->var == var) return false;
    return occurs_as_renaming(*l->body, var);
  }
  const auto& n = std::get<neutral>(m);
  for (const auto& e : n.args) {
    if (const auto* pa = std::get_if<prepat_arg>(&e)) {
      if (pa->var == var) return true;
    } else if (occurs_as_renaming(**std::get_if<term_ptr>(&e), var)) {
      return true;
    }
  }
  return false;
}

term_ptr mark_lams_term(const term& m);

spine mark_lams_spine(const spine& s) {
  spine out;
  out.reserve(s.size());
  for (const auto& e : s) {
    if (const auto* t = std::get_if<term_ptr>(&e)) {
      out.push_back(term_arg(mark_lams_term(**t)));
    } else {
      out.push_back(e);
    }
  }
  return out;
}

term_ptr mark_lams_term(const term& m) {
  if (const auto* l = std::get_if<lam>(&m)) {
    term_ptr body = mark_lams_term(*l->body);
    return make_lam(l->var, body, occurs_as_renaming(*body, l->var));
  }
  const auto& n = std::get<neutral>(m);
  return make_neutral(n.h, mark_lams_spine(n.args));
}

ctype_ptr mark_lams_type(const ctype& a) {
  if (const auto* p = std::get_if<pi_type>(&a)) {
    return make_pi(p->var, mark_lams_type(*p->domain), mark_lams_type(*p->codomain), p->prepat);
  }
  const auto& at = std::get<atomic>(a);
  return make_atomic(at.family, mark_lams_spine(at.args));
}

kind_ptr mark_lams_kind(const kind& k) {
  if (const auto* p = std::get_if<kind_pi>(&k)) {
    return make_kind_pi(p->var, mark_lams_type(*p->domain), mark_lams_kind(*p->codomain), p->prepat);
  }
  return std::make_shared<kind>(k);
}

void type_free_vars(const ctype& a, std::vector<std::string>& bound, std::vector<std::string>& out);

void term_free_vars_into(const term& m, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (const auto* l = std::get_if<lam>(&m)) {
    bound.push_back(l->var);
    term_free_vars_into(*l->body, bound, out);
    bound.pop_back();
    return;
  }
  const auto& n = std::get<neutral>(m);
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
        std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(v);
    }
  };
  if (n.h.tag == head_kind::variable) note(n.h.name);
  for (const auto& e : n.args) {
    if (const auto* pa = std::get_if<prepat_arg>(&e)) {
      note(pa->var);
    } else {
      term_free_vars_into(**std::get_if<term_ptr>(&e), bound, out);
    }
  }
}

void type_free_vars(const ctype& a, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (const auto* p = std::get_if<pi_type>(&a)) {
    type_free_vars(*p->domain, bound, out);
    bound.push_back(p->var);
    type_free_vars(*p->codomain, bound, out);
    bound.pop_back();
    return;
  }
  const auto& at = std::get<atomic>(a);
  for (const auto& e : at.args) {
    if (const auto* pa = std::get_if<prepat_arg>(&e)) {
      if (std::find(bound.begin(), bound.end(), pa->var) == bound.end() &&
          std::find(out.begin(), out.end(), pa->var) == out.end()) {
        out.push_back(pa->var);
      }
    } else {
      term_free_vars_into(**std::get_if<term_ptr>(&e), bound, out);
    }
  }
}

struct unifier;

struct elaborator {
  elab_options opts;
  signature sig;
  std::vector<meta_entry> metas;
  std::unordered_map<std::string, std::size_t> meta_index;
  std::unordered_set<std::string> used_binders;
  std::size_t binder_counter = 0;
  std::size_t meta_counter = 0;
  std::size_t max_delta = 0;

  // per-declaration state
  ref_site site = ref_site::declaration;
  std::size_t from = 0;
  source_span decl_span;
  std::vector<std::pair<std::string, std::string>> scope;  // surface -> core
  context gctx;

  [[noreturn]] void fail(verdict v, const std::string& msg, const source_span& sp) {
    throw elab_error_ex(v, msg, sp);
  }

  void reset_decl_state(std::size_t position, ref_site s, const source_span& sp) {
    site = s;
    from = position;
    decl_span = sp;
    scope.clear();
    gctx = context{};
  }

  // -- binders and metavariables ------------------------------------------

  std::string fresh_binder(const std::string& hint) {
    std::string base = hint.empty() || hint == "_" ? std::string("x") : hint;
    base = base.substr(0, base.find('#'));  // re-freshened names keep their stem
    if (used_binders.insert(base).second) return base;
    for (;;) {
      std::string cand = base + "#" + std::to_string(++binder_counter);
      if (used_binders.insert(cand).second) return cand;
    }
  }

  std::string push_binder(const std::string& surface, ctype_ptr type, bool prepat) {
    std::string core = fresh_binder(surface);
    if (surface != "_") scope.emplace_back(surface, core);
    else scope.emplace_back(surface, core);  // '_' is never referenced; keep frames paired
    gctx.push(core, std::move(type), prepat);
    return core;
  }

  void pop_binder() {
    scope.pop_back();
    gctx.pop();
  }

  const std::string* scope_lookup(const std::string& surface) {
    if (surface == "_") return nullptr;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == surface) return &it->second;
    }
    return nullptr;
  }

  meta_entry& fresh_meta_params(bool is_type, std::vector<std::string> params, ctype_ptr type,
                                const std::string& hint, const source_span& sp) {
    meta_entry m;
    m.name = (is_type ? "?t" : "?") + std::to_string(meta_counter++);
    m.is_type = is_type;
    m.params = std::move(params);
    m.type = std::move(type);
    m.hint = hint;
    m.span = sp;
    meta_index.emplace(m.name, metas.size());
    metas.push_back(std::move(m));
    return metas.back();
  }

  meta_entry& fresh_meta(bool is_type, ctype_ptr type, const std::string& hint,
                         const source_span& sp) {
    return fresh_meta_params(is_type, gctx.names(), std::move(type), hint, sp);
  }

  meta_entry* find_meta(std::string_view name) {
    auto it = meta_index.find(std::string(name));
    return it == meta_index.end() ? nullptr : &metas[it->second];
  }

  term_ptr meta_occurrence(const meta_entry& m) {
    spine s;
    s.reserve(m.params.size());
    for (const auto& p : m.params) s.push_back(term_arg(make_var(p)));
    return make_const(m.name, std::move(s));
  }

  ctype_ptr type_meta_occurrence(const meta_entry& m) {
    spine s;
    s.reserve(m.params.size());
    for (const auto& p : m.params) s.push_back(term_arg(make_var(p)));
    return make_atomic(m.name, std::move(s));
  }

  // -- solution application -------------------------------------------------

  renaming params_to_args(const meta_entry& m, const spine& args) {
    renaming sigma;
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      const std::string* v = entry_var(args[i]);
      if (v == nullptr) {
        fail(verdict::type_error,
             "internal: metavariable '" + m.name + "' applied to a non-variable", m.span);
      }
      sigma[m.params[i]] = *v;
    }
    return sigma;
  }

  term_ptr apply_term_solution(const meta_entry& m, const spine& args) {
    if (args.size() < m.params.size()) {
      fail(verdict::type_error, "internal: metavariable '" + m.name + "' under-applied", m.span);
    }
    term_ptr body = m.term_sol;
    renaming sigma = params_to_args(m, args);
    if (!sigma.empty()) body = rename_term(sigma, *body);
    if (args.size() == m.params.size()) return body;
    spine rest(args.begin() + static_cast<std::ptrdiff_t>(m.params.size()), args.end());
    stype_ptr tau = sbase();
    for (std::size_t i = 0; i < rest.size(); ++i) tau = sarrow(sbase(), tau);
    return make_neutral(reduce_spine(rest, tau, *body));
  }

  ctype_ptr apply_type_solution(const meta_entry& m, const spine& args) {
    if (args.size() != m.params.size()) {
      fail(verdict::type_error, "internal: type metavariable '" + m.name + "' misapplied", m.span);
    }
    renaming sigma = params_to_args(m, args);
    return sigma.empty() ? m.type_sol : rename_type(sigma, *m.type_sol);
  }

  term_ptr whnf_metas(term_ptr t) {
    for (;;) {
      const auto* n = std::get_if<neutral>(t.get());
      if (n == nullptr || n->h.tag != head_kind::constant || !is_meta_name(n->h.name)) return t;
      meta_entry* m = find_meta(n->h.name);
      if (m == nullptr || m->term_sol == nullptr) return t;
      t = apply_term_solution(*m, n->args);
    }
  }

  ctype_ptr deref_type(ctype_ptr t) {
    for (;;) {
      const auto* at = std::get_if<atomic>(t.get());
      if (at == nullptr || !is_meta_name(at->family)) return t;
      meta_entry* m = find_meta(at->family);
      if (m == nullptr || m->type_sol == nullptr) return t;
      t = apply_type_solution(*m, at->args);
    }
  }

  // -- zonking ---------------------------------------------------------------

  term_ptr zonk_term(const term& m) {
    if (const auto* l = std::get_if<lam>(&m)) {
      return make_lam(l->var, zonk_term(*l->body), l->prepat_marked);
    }
    const auto& n = std::get<neutral>(m);
    spine zs;
    zs.reserve(n.args.size());
    for (const auto& e : n.args) {
      if (const auto* t = std::get_if<term_ptr>(&e)) {
        zs.push_back(term_arg(zonk_term(**t)));
      } else {
        zs.push_back(e);
      }
    }
    if (n.h.tag == head_kind::constant && is_meta_name(n.h.name)) {
      meta_entry* me = find_meta(n.h.name);
      if (me == nullptr) fail(verdict::type_error, "internal: unknown metavariable", decl_span);
      if (me->term_sol == nullptr) {
        std::string what = me->hint.empty() ? "a hole" : "implicit argument '" + me->hint + "'";
        fail(verdict::type_error, "cannot infer " + what, me->span);
      }
      return zonk_term(*apply_term_solution(*me, zs));
    }
    return make_neutral(n.h, std::move(zs));
  }

  ctype_ptr zonk_type(const ctype& a) {
    if (const auto* p = std::get_if<pi_type>(&a)) {
      return make_pi(p->var, zonk_type(*p->domain), zonk_type(*p->codomain), p->prepat);
    }
    const auto& at = std::get<atomic>(a);
    spine zs;
    zs.reserve(at.args.size());
    for (const auto& e : at.args) {
      if (const auto* t = std::get_if<term_ptr>(&e)) {
        zs.push_back(term_arg(zonk_term(**t)));
      } else {
        zs.push_back(e);
      }
    }
    if (is_meta_name(at.family)) {
      meta_entry* me = find_meta(at.family);
      if (me == nullptr) fail(verdict::type_error, "internal: unknown metavariable", decl_span);
      if (me->type_sol == nullptr) {
        std::string what = me->hint.empty() ? "this type" : "the type of '" + me->hint + "'";
        fail(verdict::type_error, "cannot infer " + what, me->span);
      }
      return zonk_type(*apply_type_solution(*me, zs));
    }
    return make_atomic(at.family, std::move(zs));
  }

  kind_ptr zonk_kind(const kind& k) {
    if (const auto* p = std::get_if<kind_pi>(&k)) {
      return make_kind_pi(p->var, zonk_type(*p->domain), zonk_kind(*p->codomain), p->prepat);
    }
    return std::make_shared<kind>(k);
  }

  // -- unification entry points (bodies in struct unifier below) -------------

  void unify_types_at(ctype_ptr a, ctype_ptr b, const source_span& sp);
  void unify_terms_at(term_ptr a, term_ptr b, const source_span& sp);

  // -- elaboration of surface expressions ------------------------------------

  ctype_ptr hole_type(const std::string& hint, const source_span& sp) {
    return type_meta_occurrence(fresh_meta(true, nullptr, hint, sp));
  }

  kind_ptr elab_kind(const sexpr& e) {
    switch (e.tag) {
      case sexpr::node::ident:
        if (e.name == "type") return make_kind_base(false);
        if (e.name == "cotype") return make_kind_base(true);
        fail(verdict::type_error, "expected 'type' or 'cotype', found '" + e.name + "'", e.span);
      case sexpr::node::arrow: {
        ctype_ptr dom = elab_type(*e.kids[0]);
        std::string dummy = fresh_binder("_");
        kind_ptr cod = elab_kind(*e.kids[1]);
        return make_kind_pi(dummy, dom, cod, false);
      }
      case sexpr::node::pi: {
        ctype_ptr dom = e.kids[0] ? elab_type(*e.kids[0]) : hole_type(e.name, e.span);
        std::string core = push_binder(e.name, dom, false);
        kind_ptr cod = elab_kind(*e.kids[1]);
        pop_binder();
        return make_kind_pi(core, dom, cod, false);
      }
      default:
        fail(verdict::type_error, "this expression is not a kind", e.span);
    }
  }

  ctype_ptr elab_type(const sexpr& e) {
    switch (e.tag) {
      case sexpr::node::pi: {
        ctype_ptr dom = e.kids[0] ? elab_type(*e.kids[0]) : hole_type(e.name, e.span);
        std::string core = push_binder(e.name, dom, false);
        ctype_ptr cod = elab_type(*e.kids[1]);
        pop_binder();
        return make_pi(core, dom, cod, false);
      }
      case sexpr::node::arrow: {
        ctype_ptr dom = elab_type(*e.kids[0]);
        std::string dummy = fresh_binder("_");
        ctype_ptr cod = elab_type(*e.kids[1]);
        return make_pi(dummy, dom, cod, false);
      }
      case sexpr::node::hole:
        return hole_type("", e.span);
      case sexpr::node::ident:
      case sexpr::node::app:
        return elab_atomic(e);
      case sexpr::node::lam:
        fail(verdict::type_error, "lambda in type position", e.span);
    }
    fail(verdict::type_error, "malformed type", e.span);
  }

  ctype_ptr elab_atomic(const sexpr& e) {
    const sexpr* head_e = &e;
    std::vector<sexpr_ptr> args;
    if (e.tag == sexpr::node::app) {
      head_e = e.kids[0].get();
      args.assign(e.kids.begin() + 1, e.kids.end());
      if (head_e->tag != sexpr::node::ident) {
        fail(verdict::type_error, "the head of a type must be a family name", e.span);
      }
    }
    const std::string& name = head_e->name;
    if (name == "type" || name == "cotype") {
      fail(verdict::type_error, "'" + name + "' is a kind, not a type", head_e->span);
    }
    if (scope_lookup(name) != nullptr) {
      fail(verdict::type_error, "variable '" + name + "' used as a type", head_e->span);
    }
    const decl* d = resolve(sig, name, site, from);
    if (d == nullptr) {
      fail(verdict::type_error, "unknown type family '" + name + "'", head_e->span);
    }
    if (d->tag != decl_kind::family) {
      fail(verdict::type_error, "'" + name + "' is not a type family", head_e->span);
    }
    kind_ptr k = d->family_kind;
    spine sp_args;
    for (int i = 0; i < d->implicit_args; ++i) {
      const auto* kp = std::get_if<kind_pi>(k.get());
      if (kp == nullptr) {
        fail(verdict::type_error, "internal: implicit argument count of '" + name + "' is wrong",
             head_e->span);
      }
      meta_entry& m = fresh_meta(false, kp->domain, kp->var, head_e->span);
      term_ptr occ = meta_occurrence(m);
      sp_args.push_back(term_arg(occ));
      k = hsubst_kind(occ, kp->var, erase(*kp->domain), *kp->codomain);
    }
    for (const auto& a : args) {
      const auto* kp = std::get_if<kind_pi>(k.get());
      if (kp == nullptr) {
        fail(verdict::type_error, "too many arguments to type family '" + name + "'", a->span);
      }
      if (kp->prepat) {
        const std::string* v = arg_bare_var(*a);
        if (v == nullptr) {
          fail(verdict::prepattern_error,
               "'" + name + "' expects a renaming argument here: supply a bound variable",
               a->span);
        }
        unify_types_at(gctx.lookup(*v)->type, kp->domain, a->span);
        sp_args.push_back(pat_arg(*v));
        k = rename_kind(renaming{{kp->var, *v}}, *kp->codomain);
      } else {
        term_ptr t = elab_check(*a, kp->domain);
        sp_args.push_back(term_arg(t));
        k = hsubst_kind(t, kp->var, erase(*kp->domain), *kp->codomain);
      }
    }
    if (!std::holds_alternative<kind_base>(*k)) {
      fail(verdict::type_error, "type family '" + name + "' is not fully applied", e.span);
    }
    return make_atomic(name, std::move(sp_args));
  }

  // Bound variable named by an argument expression, if it is one.
  const std::string* arg_bare_var(const sexpr& a) {
    if (a.tag != sexpr::node::ident) return nullptr;
    return scope_lookup(a.name);
  }

  term_ptr elab_check(const sexpr& e, ctype_ptr expected) {
    expected = deref_type(std::move(expected));
    switch (e.tag) {
      case sexpr::node::lam: {
        const auto* p = std::get_if<pi_type>(expected.get());
        if (p == nullptr) {
          fail(verdict::type_error,
               "lambda [" + e.name + "] where a term of type " + print_type(*expected) +
                   " is expected",
               e.span);
        }
        std::string core = push_binder(e.name, p->domain, p->prepat);
        ctype_ptr cod =
            p->var == core ? p->codomain : rename_type(renaming{{p->var, core}}, *p->codomain);
        term_ptr body = elab_check(*e.kids[0], cod);
        pop_binder();
        return make_lam(core, body);
      }
      case sexpr::node::hole: {
        meta_entry& m = fresh_meta(false, expected, "", e.span);
        return meta_occurrence(m);
      }
      case sexpr::node::pi:
      case sexpr::node::arrow:
        fail(verdict::type_error, "type syntax in term position", e.span);
      case sexpr::node::ident:
      case sexpr::node::app: {
        auto [neu, residual] = elab_synth(e);
        return coerce(std::move(neu), std::move(residual), std::move(expected), e.span);
      }
    }
    fail(verdict::type_error, "malformed term", e.span);
  }

  // Elaborates an identifier or application head-first, returning the neutral
  // An applied head whose type is still an unknown forces that unknown to be
  // a function type; introduce domain/codomain unknowns over the same
  // parameters and solve the original in place.
  void refine_flex_arrow(const std::string& mname, const source_span& sp) {
    std::vector<std::string> params = find_meta(mname)->params;
    const std::string hint = find_meta(mname)->hint;
    ctype_ptr domo =
        type_meta_occurrence(fresh_meta_params(true, params, nullptr, hint, sp));
    ctype_ptr codo =
        type_meta_occurrence(fresh_meta_params(true, params, nullptr, hint, sp));
    find_meta(mname)->type_sol =
        make_pi(fresh_binder("_"), std::move(domo), std::move(codo), false);
  }

  // and its residual type (which may still be a pi when under-applied).
  std::pair<neutral, ctype_ptr> elab_synth(const sexpr& e) {
    const sexpr* head_e = &e;
    std::vector<sexpr_ptr> args;
    if (e.tag == sexpr::node::app) {
      head_e = e.kids[0].get();
      args.assign(e.kids.begin() + 1, e.kids.end());
      if (head_e->tag != sexpr::node::ident) {
        fail(verdict::type_error, "the head of an application must be a name", e.span);
      }
    }
    const std::string& name = head_e->name;
    if (name == "type" || name == "cotype") {
      fail(verdict::type_error, "'" + name + "' cannot appear in a term", head_e->span);
    }
    neutral n;
    ctype_ptr residual;
    if (const std::string* core = scope_lookup(name)) {
      n.h = head{head_kind::variable, *core};
      residual = gctx.lookup(*core)->type;
    } else if (const decl* d = resolve(sig, name, site, from)) {
      switch (d->tag) {
        case decl_kind::family:
          fail(verdict::type_error, "type family '" + name + "' used as a term", head_e->span);
        case decl_kind::constructor:
          n.h = head{head_kind::constant, name};
          break;
        case decl_kind::definition:
          n.h = head{head_kind::recdef, name};
          break;
      }
      residual = d->type;
      for (int i = 0; i < d->implicit_args; ++i) {
        const auto* p = std::get_if<pi_type>(residual.get());
        if (p == nullptr) {
          fail(verdict::type_error,
               "internal: implicit argument count of '" + name + "' is wrong", head_e->span);
        }
        meta_entry& m = fresh_meta(false, p->domain, p->var, head_e->span);
        term_ptr occ = meta_occurrence(m);
        n.args.push_back(term_arg(occ));
        residual = hsubst_type(occ, p->var, erase(*p->domain), *p->codomain);
      }
    } else {
      fail(verdict::type_error, "undeclared identifier '" + name + "'", head_e->span);
    }
    for (const auto& a : args) {
      residual = deref_type(std::move(residual));
      if (const auto* at = std::get_if<atomic>(residual.get());
          at != nullptr && is_meta_name(at->family)) {
        refine_flex_arrow(at->family, a->span);
        residual = deref_type(std::move(residual));
      }
      const auto* p = std::get_if<pi_type>(residual.get());
      if (p == nullptr) {
        fail(verdict::type_error, "too many arguments to '" + name + "'", a->span);
      }
      if (p->prepat) {
        const std::string* v = arg_bare_var(*a);
        if (v == nullptr) {
          fail(verdict::prepattern_error,
               "'" + name + "' expects a renaming argument here: supply a bound variable",
               a->span);
        }
        unify_types_at(gctx.lookup(*v)->type, p->domain, a->span);
        n.args.push_back(pat_arg(*v));
        residual = rename_type(renaming{{p->var, *v}}, *p->codomain);
      } else {
        term_ptr t = elab_check(*a, p->domain);
        n.args.push_back(term_arg(t));
        residual = hsubst_type(t, p->var, erase(*p->domain), *p->codomain);
      }
    }
    return {std::move(n), std::move(residual)};
  }

  // Brings a possibly under-applied neutral to the expected type, wrapping it
  // in lambdas and appending the bound variables to its spine.
  term_ptr coerce(neutral n, ctype_ptr residual, ctype_ptr expected, const source_span& sp) {
    std::vector<std::string> wraps;
    residual = deref_type(std::move(residual));
    for (;;) {
      expected = deref_type(std::move(expected));
      // a head of yet-unknown type used where a function is expected: commit
      // the unknown to the expected shape so eta-expansion below proceeds
      if (std::holds_alternative<pi_type>(*expected)) {
        if (const auto* at = std::get_if<atomic>(residual.get());
            at != nullptr && is_meta_name(at->family)) {
          unify_types_at(residual, expected, sp);
          residual = deref_type(std::move(residual));
        }
      }
      const auto* rp = std::get_if<pi_type>(residual.get());
      if (rp == nullptr) break;
      const auto* ep = std::get_if<pi_type>(expected.get());
      if (ep == nullptr) {
        fail(verdict::type_error,
             "'" + n.h.name + "' needs more arguments to have type " + print_type(*expected),
             sp);
      }
      unify_types_at(rp->domain, ep->domain, sp);
      std::string v = fresh_binder(ep->var.empty() ? rp->var : ep->var);
      if (rp->prepat) {
        n.args.push_back(pat_arg(v));
      } else {
        n.args.push_back(term_arg(make_var(v)));
      }
      ctype_ptr next_res =
          rp->var == v ? rp->codomain : rename_type(renaming{{rp->var, v}}, *rp->codomain);
      ctype_ptr next_exp =
          ep->var == v ? ep->codomain : rename_type(renaming{{ep->var, v}}, *ep->codomain);
      gctx.push(v, rp->domain, rp->prepat);
      wraps.push_back(v);
      residual = deref_type(std::move(next_res));
      expected = std::move(next_exp);
    }
    expected = deref_type(std::move(expected));
    if (std::holds_alternative<pi_type>(*expected)) {
      fail(verdict::type_error,
           "term of atomic type where " + print_type(*expected) + " is expected", sp);
    }
    unify_types_at(residual, expected, sp);
    term_ptr out = make_neutral(std::move(n));
    for (auto it = wraps.rbegin(); it != wraps.rend(); ++it) {
      out = make_lam(*it, out);
      gctx.pop();
    }
    return out;
  }

  // -- generalization ---------------------------------------------------------

  std::vector<std::pair<std::string, ctype_ptr>> generalize_leftovers(std::size_t metas_start) {
    std::vector<std::pair<std::string, ctype_ptr>> out;
    for (std::size_t i = metas_start; i < metas.size(); ++i) {
      // metas may grow during zonk? no: zonk never allocates metas
      meta_entry& m = metas[i];
      if (m.solved()) continue;
      if (m.is_type) {
        std::string what = m.hint.empty() ? "this type" : "the type of '" + m.hint + "'";
        fail(verdict::type_error, "cannot infer " + what, m.span);
      }
      if (m.type == nullptr) {
        fail(verdict::type_error, "cannot infer a hole with no known type", m.span);
      }
      ctype_ptr ty = zonk_type(*m.type);
      std::vector<std::string> bound, fv;
      type_free_vars(*ty, bound, fv);
      if (!fv.empty()) {
        std::string what = m.hint.empty() ? "a hole" : "implicit argument '" + m.hint + "'";
        fail(verdict::type_error,
             "cannot infer " + what + ": its type mentions the local variable '" + fv.front() +
                 "'",
             m.span);
      }
      std::string binder = fresh_binder(m.hint.empty() ? "X" : m.hint);
      m.term_sol = make_var(binder);
      out.emplace_back(binder, std::move(ty));
    }
    return out;
  }

  // -- declarations -----------------------------------------------------------

  void phase_a(const surface_decl& sd, int index_hint);
  void phase_b(const surface_decl& sd);
};

// -- unification ---------------------------------------------------------------

// Pattern unification modulo unfolding of recursive definitions.  Rigid/rigid
// comparisons mirror the kernel's equality engine: a memo of assumed
// equations justifies cycles, and definitions unfold at most once per
// assumption.  Flexible sides are solved by inversion, pruning metavariable
// arguments when the solution would otherwise escape its scope.
struct unifier {
  elaborator& el;
  source_span sp;
  std::vector<equation> delta;
  std::size_t fresh = 0;

  [[noreturn]] void mismatch(const std::string& msg) { el.fail(verdict::type_error, msg, sp); }

  bool is_flex(const neutral& n) {
    return n.h.tag == head_kind::constant && is_meta_name(n.h.name);
  }

  void push_delta(equation e) {
    if (delta.size() >= el.opts.equality.memo_cap) {
      el.fail(verdict::type_error, "equality assumption set exceeded its cap", sp);
    }
    delta.push_back(std::move(e));
    if (delta.size() > el.max_delta) el.max_delta = delta.size();
  }

  std::string fresh_var() { return "$u" + std::to_string(fresh++); }

  // -- types -----------------------------------------------------------------

  void types(ctype_ptr a, ctype_ptr b) {
    a = el.deref_type(std::move(a));
    b = el.deref_type(std::move(b));
    const auto* pa = std::get_if<pi_type>(a.get());
    const auto* pb = std::get_if<pi_type>(b.get());
    if (pa != nullptr && pb != nullptr) {
      if (pa->prepat != pb->prepat) {
        mismatch("binder flavors differ: " + print_type(*a) + " vs " + print_type(*b));
      }
      types(pa->domain, pb->domain);
      std::string v = fresh_var();
      ctype_ptr ca = rename_type(renaming{{pa->var, v}}, *pa->codomain);
      ctype_ptr cb = rename_type(renaming{{pb->var, v}}, *pb->codomain);
      types(std::move(ca), std::move(cb));
      return;
    }
    if (pa != nullptr || pb != nullptr) {
      // one side is a function type; the other can only match by being an
      // unsolved unknown that we commit to the same shape
      const ctype_ptr& atomic_side = pa == nullptr ? a : b;
      const ctype_ptr& pi_side = pa == nullptr ? b : a;
      const auto& at = std::get<atomic>(*atomic_side);
      if (is_meta_name(at.family)) {
        solve_type_meta(at, pi_side);
        return;
      }
      mismatch("function type against atomic type: " + print_type(*a) + " vs " + print_type(*b));
    }
    const auto& aa = std::get<atomic>(*a);
    const auto& ab = std::get<atomic>(*b);
    bool fa = is_meta_name(aa.family);
    bool fb = is_meta_name(ab.family);
    if (fa && fb && aa.family == ab.family) {
      flex_flex_same_type(aa, ab);
      return;
    }
    if (fa) {
      solve_type_meta(aa, b);
      return;
    }
    if (fb) {
      solve_type_meta(ab, a);
      return;
    }
    if (aa.family != ab.family) {
      mismatch("type families differ: '" + aa.family + "' vs '" + ab.family + "'");
    }
    spines(aa.args, ab.args, "arguments of '" + aa.family + "'");
  }

  // -- terms -----------------------------------------------------------------

  void terms(term_ptr a, term_ptr b) {
    a = el.whnf_metas(std::move(a));
    b = el.whnf_metas(std::move(b));
    const auto* la = std::get_if<lam>(a.get());
    const auto* lb = std::get_if<lam>(b.get());
    if (la != nullptr && lb != nullptr) {
      std::string v = fresh_var();
      terms(rename_term(v, la->var, *la->body), rename_term(v, lb->var, *lb->body));
      return;
    }
    if (la != nullptr || lb != nullptr) {
      const term_ptr& neu = la == nullptr ? a : b;
      const term_ptr& lamside = la == nullptr ? b : a;
      const auto& n = std::get<neutral>(*neu);
      if (is_flex(n)) {
        solve_term_meta(n, lamside);
        return;
      }
      mismatch("lambda against non-lambda");
    }
    const auto& na = std::get<neutral>(*a);
    const auto& nb = std::get<neutral>(*b);
    bool fa = is_flex(na);
    bool fb = is_flex(nb);
    if (fa && fb && na.h.name == nb.h.name) {
      flex_flex_same_term(na, nb);
      return;
    }
    if (fa) {
      solve_term_meta(na, b);
      return;
    }
    if (fb) {
      solve_term_meta(nb, a);
      return;
    }
    rigid(na, nb);
  }

  void rigid(const neutral& na, const neutral& nb) {
    if (alpha_equal(na, nb)) return;
    for (auto it = delta.rbegin(); it != delta.rend(); ++it) {
      if (match_renaming(*it, na, nb)) return;
    }
    if (na.h.tag == head_kind::recdef) {
      push_delta(canonicalize_equation(na, nb));
      terms(unfold(na), make_neutral(nb));
      return;
    }
    if (nb.h.tag == head_kind::recdef) {
      push_delta(canonicalize_equation(na, nb));
      terms(make_neutral(na), unfold(nb));
      return;
    }
    if (na.h.tag != nb.h.tag || na.h.name != nb.h.name) {
      mismatch("terms differ: '" + print_neutral(na) + "' vs '" + print_neutral(nb) + "'");
    }
    spines(na.args, nb.args, "arguments of '" + na.h.name + "'");
  }

  term_ptr unfold(const neutral& n) {
    const decl* d = el.sig.find(n.h.name);
    if (d == nullptr || d->tag != decl_kind::definition) {
      mismatch("unknown recursive definition '" + n.h.name + "'");
    }
    if (d->body == nullptr) {
      el.fail(verdict::type_error,
              "deciding this equality needs the body of '" + n.h.name +
                  "', which is not elaborated yet (declared later?)",
              sp);
    }
    if (!is_prepattern_spine(n.args)) {
      el.fail(verdict::prepattern_error,
              "'" + n.h.name + "' is applied to a non-renaming argument", sp);
    }
    if (!is_contractive(*d->body)) {
      el.fail(verdict::guardedness_error, "definition of '" + n.h.name + "' is not contractive",
              sp);
    }
    return make_neutral(reduce_spine(n.args, erase(*d->type), *d->body));
  }

  void spines(const spine& sa, const spine& sb, const std::string& what) {
    if (sa.size() != sb.size()) mismatch("argument counts differ for " + what);
    for (std::size_t i = 0; i < sa.size(); ++i) {
      terms(entry_term(sa[i]), entry_term(sb[i]));
    }
  }

  static term_ptr entry_term(const spine_entry& e) {
    if (const auto* t = std::get_if<term_ptr>(&e)) return *t;
    return make_var(std::get<prepat_arg>(e).var);
  }

  // -- solving ----------------------------------------------------------------

  std::vector<std::string> pattern_args(const meta_entry& m, const spine& args) {
    std::vector<std::string> vars;
    vars.reserve(args.size());
    for (const auto& e : args) {
      const std::string* v = entry_var(e);
      if (v == nullptr) {
        el.fail(verdict::type_error,
                "cannot solve '" + m.name + "': it is applied to a non-variable argument",
                m.span);
      }
      if (std::find(vars.begin(), vars.end(), *v) != vars.end()) {
        el.fail(verdict::type_error,
                "cannot solve '" + m.name + "': it is applied to a repeated variable", m.span);
      }
      vars.push_back(*v);
    }
    return vars;
  }

  void solve_term_meta(const neutral& occ, const term_ptr& rhs) {
    meta_entry* m = el.find_meta(occ.h.name);
    std::vector<std::string> argvars = pattern_args(*m, occ.args);
    std::vector<std::string> allowed = argvars;
    scan_term(occ.h.name, allowed, *rhs);
    renaming inv;
    for (std::size_t i = 0; i < argvars.size() && i < m->params.size(); ++i) {
      inv[argvars[i]] = m->params[i];
    }
    m = el.find_meta(occ.h.name);  // scan pruning may reallocate the meta table
    m->term_sol = inv.empty() ? rhs : rename_term(inv, *rhs);
  }

  void solve_type_meta(const atomic& occ, const ctype_ptr& rhs) {
    meta_entry* m = el.find_meta(occ.family);
    std::vector<std::string> argvars = pattern_args(*m, occ.args);
    std::vector<std::string> allowed = argvars;
    scan_type(occ.family, allowed, *rhs);
    renaming inv;
    for (std::size_t i = 0; i < argvars.size() && i < m->params.size(); ++i) {
      inv[argvars[i]] = m->params[i];
    }
    m = el.find_meta(occ.family);
    m->type_sol = inv.empty() ? rhs : rename_type(inv, *rhs);
  }

  void flex_flex_same_term(const neutral& na, const neutral& nb) {
    meta_entry* m = el.find_meta(na.h.name);
    std::vector<std::string> va = pattern_args(*m, na.args);
    std::vector<std::string> vb = pattern_args(*m, nb.args);
    if (va == vb) return;
    restrict_meta(na.h.name, va, vb, /*is_type=*/false);
  }

  void flex_flex_same_type(const atomic& aa, const atomic& ab) {
    meta_entry* m = el.find_meta(aa.family);
    std::vector<std::string> va = pattern_args(*m, aa.args);
    std::vector<std::string> vb = pattern_args(*m, ab.args);
    if (va == vb) return;
    restrict_meta(aa.family, va, vb, /*is_type=*/true);
  }

  // Same meta against itself with different arguments: restrict it to the
  // positions where the two agree.
  void restrict_meta(const std::string& name, const std::vector<std::string>& va,
                     const std::vector<std::string>& vb, bool is_type) {
    meta_entry* m = el.find_meta(name);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < va.size() && i < vb.size(); ++i) {
      if (va[i] == vb[i]) keep.push_back(i);
    }
    std::vector<std::string> params;
    for (std::size_t i : keep) params.push_back(m->params[i]);
    meta_entry& m2 =
        el.fresh_meta_params(is_type, params, m->type, m->hint, m->span);
    m = el.find_meta(name);
    spine occ;
    for (const auto& p : params) occ.push_back(term_arg(make_var(p)));
    if (is_type) {
      m->type_sol = make_atomic(m2.name, std::move(occ));
    } else {
      m->term_sol = make_const(m2.name, std::move(occ));
    }
  }

  // Restricts meta `name` (an occurrence with argument variables `argvars`
  // inside a solution candidate) to the positions allowed by `allowed`.
  void prune_meta(const std::string& name, const std::vector<std::string>& argvars,
                  const std::vector<std::string>& allowed) {
    meta_entry* m = el.find_meta(name);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < argvars.size(); ++i) {
      if (std::find(allowed.begin(), allowed.end(), argvars[i]) != allowed.end()) {
        keep.push_back(i);
      }
    }
    std::vector<std::string> params;
    for (std::size_t i : keep) {
      if (i < m->params.size()) params.push_back(m->params[i]);
    }
    meta_entry& m2 = el.fresh_meta_params(m->is_type, params, m->type, m->hint, m->span);
    m = el.find_meta(name);
    spine occ;
    for (const auto& p : params) occ.push_back(term_arg(make_var(p)));
    if (m->is_type) {
      m->type_sol = make_atomic(m2.name, std::move(occ));
    } else {
      m->term_sol = make_const(m2.name, std::move(occ));
    }
  }

  // Occurs and scope check for a solution candidate of meta `mname`: every
  // free variable must be in `allowed`, metavariable occurrences that would
  // smuggle one in are pruned, and `mname` itself must not occur.
  void scan_term(const std::string& mname, std::vector<std::string>& allowed, const term& t) {
    if (const auto* l = std::get_if<lam>(&t)) {
      allowed.push_back(l->var);
      scan_term(mname, allowed, *l->body);
      allowed.pop_back();
      return;
    }
    const auto& n = std::get<neutral>(t);
    if (n.h.tag == head_kind::variable) {
      if (std::find(allowed.begin(), allowed.end(), n.h.name) == allowed.end()) {
        el.fail(verdict::type_error,
                "cannot solve '" + mname + "': the solution mentions the local variable '" +
                    n.h.name + "'",
                sp);
      }
    } else if (n.h.tag == head_kind::constant && is_meta_name(n.h.name)) {
      meta_entry* m = el.find_meta(n.h.name);
      if (m != nullptr && m->term_sol != nullptr) {
        scan_term(mname, allowed, *el.apply_term_solution(*m, n.args));
        return;
      }
      if (n.h.name == mname) {
        el.fail(verdict::type_error, "cannot solve '" + mname + "': it occurs in its own solution",
                sp);
      }
      scan_flex_args(mname, allowed, n.h.name, n.args);
      return;
    }
    scan_spine(mname, allowed, n.args);
  }

  void scan_flex_args(const std::string& mname, std::vector<std::string>& allowed,
                      const std::string& flex_name, const spine& args) {
    std::vector<std::string> argvars;
    bool needs_prune = false;
    for (const auto& e : args) {
      const std::string* v = entry_var(e);
      if (v == nullptr) {
        // non-pattern occurrence inside a candidate: check it like a term
        scan_spine(mname, allowed, args);
        return;
      }
      argvars.push_back(*v);
      if (std::find(allowed.begin(), allowed.end(), *v) == allowed.end()) needs_prune = true;
    }
    if (needs_prune) {
      prune_meta(flex_name, argvars, allowed);
      meta_entry* m = el.find_meta(flex_name);
      if (m->term_sol != nullptr) {
        scan_term(mname, allowed, *el.apply_term_solution(*m, args));
      } else if (m->type_sol != nullptr) {
        // type meta pruned while scanning a term cannot happen; args rebuilt below
      }
    }
  }

  void scan_spine(const std::string& mname, std::vector<std::string>& allowed, const spine& s) {
    for (const auto& e : s) {
      if (const auto* pa = std::get_if<prepat_arg>(&e)) {
        if (std::find(allowed.begin(), allowed.end(), pa->var) == allowed.end()) {
          el.fail(verdict::type_error,
                  "cannot solve '" + mname + "': the solution mentions the local variable '" +
                      pa->var + "'",
                  sp);
        }
      } else {
        scan_term(mname, allowed, **std::get_if<term_ptr>(&e));
      }
    }
  }

  void scan_type(const std::string& mname, std::vector<std::string>& allowed, const ctype& a) {
    if (const auto* p = std::get_if<pi_type>(&a)) {
      scan_type(mname, allowed, *p->domain);
      allowed.push_back(p->var);
      scan_type(mname, allowed, *p->codomain);
      allowed.pop_back();
      return;
    }
    const auto& at = std::get<atomic>(a);
    if (is_meta_name(at.family)) {
      meta_entry* m = el.find_meta(at.family);
      if (m != nullptr && m->type_sol != nullptr) {
        scan_type(mname, allowed, *el.apply_type_solution(*m, at.args));
        return;
      }
      if (at.family == mname) {
        el.fail(verdict::type_error, "cannot solve '" + mname + "': it occurs in its own solution",
                sp);
      }
      // prune the type meta's arguments if needed
      std::vector<std::string> argvars;
      bool needs_prune = false;
      bool all_vars = true;
      for (const auto& e : at.args) {
        const std::string* v = entry_var(e);
        if (v == nullptr) {
          all_vars = false;
          break;
        }
        argvars.push_back(*v);
        if (std::find(allowed.begin(), allowed.end(), *v) == allowed.end()) needs_prune = true;
      }
      if (all_vars && needs_prune) {
        prune_meta(at.family, argvars, allowed);
        meta_entry* m2 = el.find_meta(at.family);
        if (m2->type_sol != nullptr) {
          scan_type(mname, allowed, *el.apply_type_solution(*m2, at.args));
        }
        return;
      }
    }
    scan_spine(mname, allowed, at.args);
  }
};

void elaborator::unify_types_at(ctype_ptr a, ctype_ptr b, const source_span& sp) {
  unifier u{*this, sp};
  u.types(std::move(a), std::move(b));
}

void elaborator::unify_terms_at(term_ptr a, term_ptr b, const source_span& sp) {
  unifier u{*this, sp};
  u.terms(std::move(a), std::move(b));
}

// -- declaration drivers ---------------------------------------------------

void elaborator::phase_a(const surface_decl& sd, int) {
  reset_decl_state(sig.size(), ref_site::declaration, sd.span);
  std::size_t metas_start = metas.size();

  bool kind_classifier = is_kind_tail(*sd.classifier);
  if (kind_classifier && sd.body) {
    fail(verdict::type_error, "a type family cannot have a definition body", sd.span);
  }

  decl d;
  d.name = sd.name;
  d.span = sd.span;

  if (kind_classifier) {
    d.tag = decl_kind::family;
    std::vector<std::string> bound;
    std::vector<std::string> implicit;
    collect_free_caps(*sd.classifier, sig, from, bound, implicit);
    sexpr_ptr cls = wrap_implicit_binders(sd.classifier, implicit);
    kind_ptr k = elab_kind(*cls);
    auto extra = generalize_leftovers(metas_start);
    k = zonk_kind(*k);
    for (auto it = extra.rbegin(); it != extra.rend(); ++it) {
      k = make_kind_pi(it->first, it->second, k, false);
    }
    d.family_kind = mark_lams_kind(*k);
    d.implicit_args = static_cast<int>(implicit.size() + extra.size());
  } else if (sd.body) {
    d.tag = decl_kind::definition;
    ctype_ptr a = elab_type(*sd.classifier);
    // no implicit abstraction or generalization for definitions: their types
    // must come out closed and fully inferred
    a = zonk_type(*a);
    a = flip_prepattern(*a);
    d.type = mark_lams_type(*a);
    d.implicit_args = 0;
  } else {
    d.tag = decl_kind::constructor;
    std::vector<std::string> bound;
    std::vector<std::string> implicit;
    collect_free_caps(*sd.classifier, sig, from, bound, implicit);
    sexpr_ptr cls = wrap_implicit_binders(sd.classifier, implicit);
    ctype_ptr a = elab_type(*cls);
    auto extra = generalize_leftovers(metas_start);
    a = zonk_type(*a);
    for (auto it = extra.rbegin(); it != extra.rend(); ++it) {
      a = make_pi(it->first, it->second, a, false);
    }
    d.type = mark_lams_type(*a);
    d.implicit_args = static_cast<int>(implicit.size() + extra.size());
  }

  if (!sig.append(std::move(d))) {
    fail(verdict::type_error, "duplicate declaration of '" + sd.name + "'", sd.span);
  }
}

void elaborator::phase_b(const surface_decl& sd) {
  const decl* d = sig.find(sd.name);
  reset_decl_state(*sig.position(sd.name), ref_site::recursive_body, sd.span);
  term_ptr body = elab_check(*sd.body, d->type);
  body = zonk_term(*body);
  body = mark_lams_term(*body);
  sig.set_body(sd.name, body);
}

}  // namespace

bool elab_result::ok() const {
  for (const auto& r : verdicts) {
    if (r.v != verdict::ok) return false;
  }
  return true;
}

elab_result elaborate(const std::vector<surface_decl>& decls, const elab_options& opts) {
  elaborator el;
  el.opts = opts;
  elab_result out;
  out.verdicts.reserve(decls.size());
  std::vector<bool> failed(decls.size(), false);

  auto record = [&](std::size_t i, verdict v, const std::string& msg, const source_span& sp) {
    out.verdicts[i].v = v;
    diagnostic diag;
    diag.category = v;
    diag.decl = decls[i].name;
    diag.judgment = "elaborating '" + decls[i].name + "'";
    diag.message = msg;
    diag.span = sp;
    out.diagnostics.push_back(std::move(diag));
    failed[i] = true;
  };

  for (std::size_t i = 0; i < decls.size(); ++i) {
    out.verdicts.push_back({decls[i].name, verdict::ok});
    try {
      el.phase_a(decls[i], static_cast<int>(i));
    } catch (const elab_error_ex& e) {
      record(i, e.category, e.what(), e.span);
    } catch (const subst_error& e) {
      record(i, verdict::type_error, e.what(), decls[i].span);
    }
  }

  for (std::size_t i = 0; i < decls.size(); ++i) {
    if (failed[i] || !decls[i].body) continue;
    const decl* d = el.sig.find(decls[i].name);
    if (d == nullptr || d->tag != decl_kind::definition) continue;
    try {
      el.phase_b(decls[i]);
    } catch (const elab_error_ex& e) {
      record(i, e.category, e.what(), e.span);
    } catch (const subst_error& e) {
      record(i, verdict::type_error, e.what(), decls[i].span);
    }
  }

  out.sig = std::move(el.sig);
  out.max_assumptions = el.max_delta;
  return out;
}

std::vector<std::string> free_implicit_names(const sexpr& classifier, const signature& sig,
                                             std::size_t from) {
  std::vector<std::string> bound, out;
  collect_free_caps(classifier, sig, from, bound, out);
  return out;
}

ctype_ptr flip_prepattern(const ctype& a) {
  if (const auto* p = std::get_if<pi_type>(&a)) {
    return make_pi(p->var, p->domain, flip_prepattern(*p->codomain), true);
  }
  return std::make_shared<ctype>(a);
}

term_ptr mark_renaming_lams(const term& m) { return mark_lams_term(m); }

}  // namespace colf
