#include "colf/typecheck.hpp"

#include <variant>

#include "colf/print.hpp"
#include "colf/subst.hpp"
#include "colf/validity.hpp"

namespace colf {

namespace {

check_error flavor_error(const std::string& msg) {
  return check_error(verdict::prepattern_error, msg);
}

check_error plain_error(const std::string& msg) {
  return check_error(verdict::type_error, msg);
}

}  // namespace

bool check_result::ok() const {
  for (const auto& r : verdicts) {
    if (r.v != verdict::ok) return false;
  }
  return true;
}

verdict check_result::verdict_for(std::string_view name) const {
  for (const auto& r : verdicts) {
    if (r.name == name) return r.v;
  }
  return verdict::ok;
}

checker::checker(const signature& sig, check_options opts) : sig_(sig), opts_(std::move(opts)) {}

const decl* checker::resolve_or_throw(const std::string& name, std::size_t from) {
  const decl* d = resolve(sig_, name, site_, from);
  if (d == nullptr) throw plain_error("unknown or not-yet-visible constant '" + name + "'");
  return d;
}

void checker::check_kind(context& g, const kind& k, std::size_t from) {
  if (std::holds_alternative<kind_base>(k)) return;
  const auto& p = std::get<kind_pi>(k);
  check_type(g, *p.domain, from);
  g.push(p.var, p.domain, p.prepat);
  check_kind(g, *p.codomain, from);
  g.pop();
}

void checker::check_type(context& g, const ctype& a, std::size_t from) {
  if (const auto* p = std::get_if<pi_type>(&a)) {
    check_type(g, *p->domain, from);
    g.push(p->var, p->domain, p->prepat);
    check_type(g, *p->codomain, from);
    g.pop();
    return;
  }
  const auto& at = std::get<atomic>(a);
  const decl* d = resolve_or_throw(at.family, from);
  if (d->tag != decl_kind::family) {
    throw plain_error("'" + at.family + "' is not a type family");
  }
  spine_against_kind(g, at.args, d->family_kind, from, at.family);
}

void checker::spine_against_kind(context& g, const spine& s, kind_ptr k, std::size_t from,
                                 const std::string& family) {
  for (const auto& entry : s) {
    const auto* p = std::get_if<kind_pi>(k.get());
    if (p == nullptr) {
      throw plain_error("too many arguments to type family '" + family + "'");
    }
    if (!p->prepat) {
      const auto* t = std::get_if<term_ptr>(&entry);
      if (t == nullptr) {
        throw flavor_error("renaming argument supplied where '" + family +
                           "' expects an ordinary term");
      }
      check_term(g, **t, *p->domain, from);
      k = hsubst_kind(*t, p->var, erase(*p->domain), *p->codomain);
    } else {
      const auto* pa = std::get_if<prepat_arg>(&entry);
      if (pa == nullptr) {
        throw flavor_error("ordinary term supplied where '" + family +
                           "' expects a renaming argument");
      }
      const ctx_entry* e = g.lookup(pa->var);
      if (e == nullptr) throw plain_error("unbound variable '" + pa->var + "'");
      if (!e->prepat) {
        throw flavor_error("variable '" + pa->var + "' is not bound as a renaming argument");
      }
      require_equal_types(g, *e->type, *p->domain, "argument to '" + family + "'");
      k = rename_kind(renaming{{p->var, pa->var}}, *p->codomain);
    }
  }
  if (!std::holds_alternative<kind_base>(*k)) {
    throw plain_error("type family '" + family + "' is not fully applied");
  }
}

void checker::check_term(context& g, const term& m, const ctype& a, std::size_t from) {
  if (const auto* l = std::get_if<lam>(&m)) {
    const auto* p = std::get_if<pi_type>(&a);
    if (p == nullptr) {
      throw plain_error("lambda [" + l->var + "] checked against atomic type " + print_type(a));
    }
    ctype_ptr cod = p->codomain;
    if (p->var != l->var) cod = rename_type(renaming{{p->var, l->var}}, *p->codomain);
    // A lambda marked as binding a renaming variable gets the prepattern
    // flavor even under an ordinary pi; the converse never happens.
    g.push(l->var, p->domain, p->prepat || l->prepat_marked);
    check_term(g, *l->body, *cod, from);
    g.pop();
    return;
  }
  const auto& n = std::get<neutral>(m);
  const auto* expected = std::get_if<atomic>(&a);
  if (expected == nullptr) {
    throw plain_error("head '" + n.h.name + "' is not a lambda but is checked against " +
                      print_type(a) + " (arguments missing?)");
  }
  ctype_ptr head_type;
  switch (n.h.tag) {
    case head_kind::variable: {
      const ctx_entry* e = g.lookup(n.h.name);
      if (e == nullptr) throw plain_error("unbound variable '" + n.h.name + "'");
      head_type = e->type;
      break;
    }
    case head_kind::constant: {
      const decl* d = resolve_or_throw(n.h.name, from);
      if (d->tag == decl_kind::family) {
        throw plain_error("type family '" + n.h.name + "' used as a term");
      }
      if (d->tag == decl_kind::definition) {
        throw plain_error("recursive definition '" + n.h.name +
                          "' referenced as a constructor");
      }
      head_type = d->type;
      break;
    }
    case head_kind::recdef: {
      const decl* d = resolve_or_throw(n.h.name, from);
      if (d->tag != decl_kind::definition) {
        throw plain_error("'" + n.h.name + "' is not a recursive definition");
      }
      head_type = d->type;
      break;
    }
  }
  ctype_ptr result = spine_against_type(g, n.args, head_type, from, n.h.name);
  const auto* got = std::get_if<atomic>(result.get());
  if (got == nullptr) {
    throw plain_error("head '" + n.h.name + "' is applied to too few arguments for type " +
                      print_type(a));
  }
  require_equal_types(g, *result, a, "term " + print_neutral(n));
}

ctype_ptr checker::spine_against_type(context& g, const spine& s, ctype_ptr a, std::size_t from,
                                      const std::string& head_name) {
  for (const auto& entry : s) {
    const auto* p = std::get_if<pi_type>(a.get());
    if (p == nullptr) {
      throw plain_error("too many arguments to '" + head_name + "'");
    }
    if (!p->prepat) {
      const auto* t = std::get_if<term_ptr>(&entry);
      if (t == nullptr) {
        throw flavor_error("renaming argument supplied where '" + head_name +
                           "' expects an ordinary term");
      }
      check_term(g, **t, *p->domain, from);
      a = hsubst_type(*t, p->var, erase(*p->domain), *p->codomain);
    } else {
      const auto* pa = std::get_if<prepat_arg>(&entry);
      if (pa == nullptr) {
        throw flavor_error("ordinary term supplied where '" + head_name +
                           "' expects a renaming argument");
      }
      const ctx_entry* e = g.lookup(pa->var);
      if (e == nullptr) throw plain_error("unbound variable '" + pa->var + "'");
      if (!e->prepat) {
        throw flavor_error("variable '" + pa->var + "' is not bound as a renaming argument");
      }
      require_equal_types(g, *e->type, *p->domain, "argument to '" + head_name + "'");
      a = rename_type(renaming{{p->var, pa->var}}, *p->codomain);
    }
  }
  return a;
}

void checker::require_equal_types(context& g, const ctype& a, const ctype& b,
                                  const std::string& what) {
  if (!types_equal(g.names(), a, b)) {
    throw plain_error("type mismatch for " + what + ": " + print_type(a) + " vs " +
                      print_type(b));
  }
}

bool checker::types_equal(const std::vector<std::string>& theta, const ctype& a, const ctype& b) {
  if (a.index() != b.index()) return false;
  if (const auto* pa = std::get_if<pi_type>(&a)) {
    const auto& pb = std::get<pi_type>(b);
    if (pa->prepat != pb.prepat) return false;
    if (!types_equal(theta, *pa->domain, *pb.domain)) return false;
    // Compare codomains at a shared fresh variable; '$' cannot occur in
    // source identifiers, so no capture is possible.
    std::string fresh = "$p" + std::to_string(fresh_++);
    ctype_ptr ca = pa->var == fresh ? pa->codomain : rename_type(renaming{{pa->var, fresh}}, *pa->codomain);
    ctype_ptr cb = pb.var == fresh ? pb.codomain : rename_type(renaming{{pb.var, fresh}}, *pb.codomain);
    std::vector<std::string> theta2 = theta;
    theta2.push_back(fresh);
    return types_equal(theta2, *ca, *cb);
  }
  const auto& aa = std::get<atomic>(a);
  const auto& ab = std::get<atomic>(b);
  if (aa.family != ab.family) return false;
  return spines_equal(theta, aa.args, ab.args);
}

bool checker::spines_equal(const std::vector<std::string>& theta, const spine& a, const spine& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return false;
    if (const auto* pa = std::get_if<prepat_arg>(&a[i])) {
      if (pa->var != std::get<prepat_arg>(b[i]).var) return false;
      continue;
    }
    const term& lhs = *std::get<term_ptr>(a[i]);
    const term& rhs = *std::get<term_ptr>(b[i]);
    eq_result r = equal_terms(sig_, theta, lhs, rhs, opts_.equality);
    if (r.max_assumptions > max_assumptions_) max_assumptions_ = r.max_assumptions;
    if (r.verdict == eq_verdict::error) {
      throw plain_error("equality check failed: " + r.reason);
    }
    if (r.verdict != eq_verdict::equal) return false;
  }
  return true;
}

namespace {

verdict violation_category(guardedness_violation::reason r) {
  switch (r) {
    case guardedness_violation::reason::non_prepattern_spine:
      return verdict::prepattern_error;
    case guardedness_violation::reason::unknown_constant:
      return verdict::type_error;
    default:
      return verdict::guardedness_error;
  }
}

std::string violation_message(const guardedness_violation& v) {
  std::string msg;
  switch (v.why) {
    case guardedness_violation::reason::invalid_trace:
      msg = "recursion is not productive: the cycle passes only through";
      break;
    case guardedness_violation::reason::non_prepattern_spine:
      return v.detail;
    case guardedness_violation::reason::non_contractive:
      return v.detail;
    case guardedness_violation::reason::unknown_constant:
      return v.detail;
  }
  if (v.trace.empty()) {
    msg = "recursion is not productive: the definition reaches itself with no "
          "constructor in between";
  } else {
    msg += " constructors";
    for (const auto& c : v.trace) msg += " '" + c + "'";
    msg += ", none of which is a dominating coinductive constructor";
  }
  if (!v.detail.empty()) msg += " (" + v.detail + ")";
  return msg;
}

struct decl_check_failure {
  verdict v;
  std::string message;
};

}  // namespace

check_result check_signature(const signature& sig, const check_options& opts) {
  check_result out;
  out.verdicts.reserve(sig.size());
  checker ck(sig, opts);

  auto record = [&](const decl& d, std::size_t i, verdict v, const std::string& msg) {
    out.verdicts[i].v = v;
    diagnostic diag;
    diag.category = v;
    diag.decl = d.name;
    diag.judgment = d.tag == decl_kind::definition ? "checking definition '" + d.name + "'"
                                                   : "checking declaration '" + d.name + "'";
    diag.message = msg;
    diag.span = d.span;
    out.diagnostics.push_back(std::move(diag));
  };

  // Pass 1: classifiers and the recursion discipline.
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const decl& d = sig.at(i);
    out.verdicts.push_back({d.name, verdict::ok});
    ck.set_site(ref_site::declaration);
    context g;
    try {
      switch (d.tag) {
        case decl_kind::family:
          if (!d.family_kind) throw check_error(verdict::type_error, "family without a kind");
          ck.check_kind(g, *d.family_kind, i);
          break;
        case decl_kind::constructor:
          if (!d.type) throw check_error(verdict::type_error, "constructor without a type");
          ck.check_type(g, *d.type, i);
          break;
        case decl_kind::definition: {
          if (!d.type || !d.body) {
            throw check_error(verdict::type_error, "definition without a type or body");
          }
          ck.check_type(g, *d.type, i);
          if (!is_prepattern_type(*d.type)) {
            throw check_error(verdict::prepattern_error,
                              "the type of a recursive definition may bind only renaming "
                              "arguments: " + print_type(*d.type));
          }
          if (!is_contractive(*d.body)) {
            throw check_error(verdict::guardedness_error,
                              "body of '" + d.name + "' has a recursion constant at its head");
          }
          if (auto v = check_guarded(sig, d.name, *d.body)) {
            throw check_error(violation_category(v->why), violation_message(*v));
          }
          break;
        }
      }
    } catch (const check_error& e) {
      record(d, i, e.category, e.what());
    } catch (const subst_error& e) {
      record(d, i, verdict::type_error, e.what());
    }
  }

  // Pass 2: definition bodies, with recursion constants visible everywhere.
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const decl& d = sig.at(i);
    if (d.tag != decl_kind::definition || out.verdicts[i].v != verdict::ok) continue;
    ck.set_site(ref_site::recursive_body);
    context g;
    try {
      ck.check_term(g, *d.body, *d.type, i);
    } catch (const check_error& e) {
      record(d, i, e.category, e.what());
    } catch (const subst_error& e) {
      record(d, i, verdict::type_error, e.what());
    }
  }

  out.max_assumptions = ck.max_assumptions();
  return out;
}

}  // namespace colf
