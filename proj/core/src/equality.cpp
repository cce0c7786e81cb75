#include "colf/equality.hpp"

#include <algorithm>
#include <cmath>

#include "colf/validity.hpp"

namespace colf {

namespace {

neutral rename_neutral(const renaming& sigma, const neutral& r) {
  head h = r.h;
  if (h.tag == head_kind::variable) {
    auto it = sigma.find(h.name);
    if (it != sigma.end()) h.name = it->second;
  }
  return neutral{std::move(h), rename_spine(sigma, r.args)};
}

}  // namespace

equation canonicalize_equation(const neutral& lhs, const neutral& rhs) {
  std::vector<std::string> fv = free_vars(lhs);
  for (const auto& v : free_vars(rhs))
    if (std::find(fv.begin(), fv.end(), v) == fv.end()) fv.push_back(v);

  renaming sigma;
  equation e;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    std::string canon = "$c" + std::to_string(i);
    sigma.emplace(fv[i], canon);
    e.theta.push_back(std::move(canon));
  }
  e.lhs = rename_neutral(sigma, lhs);
  e.rhs = rename_neutral(sigma, rhs);
  return e;
}

// -- renaming-instance matching ----------------------------------------

namespace {

struct matcher {
  renaming sigma;  // canonical name -> goal variable
  std::vector<std::pair<std::string, std::string>> bound;  // stored binder -> goal binder

  bool var(const std::string& sv, const std::string& gv) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (it->first == sv) return it->second == gv;
      if (it->second == gv) return false;  // goal var bound, stored var is not its partner
    }
    auto it = sigma.find(sv);
    if (it != sigma.end()) return it->second == gv;
    sigma.emplace(sv, gv);
    return true;
  }

  bool match(const term& s, const term& g) {
    const auto* ls = std::get_if<lam>(&s);
    const auto* lg = std::get_if<lam>(&g);
    if ((ls == nullptr) != (lg == nullptr)) return false;
    if (ls) {
      bound.emplace_back(ls->var, lg->var);
      bool r = match(*ls->body, *lg->body);
      bound.pop_back();
      return r;
    }
    return match(std::get<neutral>(s), std::get<neutral>(g));
  }

  bool match(const neutral& s, const neutral& g) {
    if (s.h.tag != g.h.tag) return false;
    if (s.h.tag == head_kind::variable) {
      if (!var(s.h.name, g.h.name)) return false;
    } else if (s.h.name != g.h.name) {
      return false;
    }
    if (s.args.size() != g.args.size()) return false;
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      const auto* ts = std::get_if<term_ptr>(&s.args[i]);
      const auto* tg = std::get_if<term_ptr>(&g.args[i]);
      if ((ts == nullptr) != (tg == nullptr)) return false;
      if (ts) {
        if (!match(**ts, **tg)) return false;
      } else if (!var(std::get<prepat_arg>(s.args[i]).var, std::get<prepat_arg>(g.args[i]).var)) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

std::optional<renaming> match_renaming(const equation& e, const neutral& lhs,
                                       const neutral& rhs) {
  matcher m;
  if (!m.match(e.lhs, lhs)) return std::nullopt;
  if (!m.match(e.rhs, rhs)) return std::nullopt;
  return m.sigma;
}

// -- the equality engine ------------------------------------------------

namespace {

struct eq_abort {
  std::string message;
};

struct engine {
  const signature& sig;
  const eq_options& opts;
  std::vector<equation> delta;
  std::size_t max_delta = 0;
  int fresh = 0;
  std::string why_unequal;

  void unequal(const std::string& msg) {
    if (why_unequal.empty()) why_unequal = msg;
  }

  std::string fresh_var() { return "$" + std::to_string(fresh++); }

  const decl* definition_of(const std::string& name) {
    const decl* d = sig.find(name);
    if (!d || d->tag != decl_kind::definition || !d->body || !d->type)
      throw eq_abort{"unknown recursion constant '" + name + "'"};
    return d;
  }

  // Unfold r . S by feeding the spine to the definition's body.
  neutral unfold(const neutral& r) {
    const decl* d = definition_of(r.h.name);
    if (!is_prepattern_spine(r.args))
      throw eq_abort{"recursion constant '" + r.h.name +
                     "' applied to a non-variable argument in an equality goal"};
    if (!is_contractive(*d->body))
      throw eq_abort{"definition of '" + r.h.name + "' is not contractive"};
    return reduce_spine(r.args, erase(*d->type), *d->body);
  }

  void push(const neutral& a, const neutral& b) {
    if (delta.size() >= opts.memo_cap)
      throw eq_abort{"assumption cap of " + std::to_string(opts.memo_cap) +
                     " reached; this indicates a defect in the equality engine"};
    delta.push_back(canonicalize_equation(a, b));
    max_delta = std::max(max_delta, delta.size());
  }

  bool eq_term(const term& a, const term& b) {
    const auto* la = std::get_if<lam>(&a);
    const auto* lb = std::get_if<lam>(&b);
    if ((la == nullptr) != (lb == nullptr)) {
      unequal("abstraction compared against a neutral term");
      return false;
    }
    if (la) {
      std::string z = fresh_var();
      term_ptr ba = rename_term(z, la->var, *la->body);
      term_ptr bb = rename_term(z, lb->var, *lb->body);
      return eq_term(*ba, *bb);
    }
    return eq_neutral(std::get<neutral>(a), std::get<neutral>(b));
  }

  bool eq_neutral(const neutral& a, const neutral& b) {
    // Close the goal if it is a renaming instance of an assumption.
    for (auto it = delta.rbegin(); it != delta.rend(); ++it)
      if (match_renaming(*it, a, b)) return true;

    if (a.h.tag == head_kind::recdef) {
      push(a, b);
      neutral unfolded = unfold(a);
      bool r = eq_neutral(unfolded, b);
      delta.pop_back();
      return r;
    }
    if (b.h.tag == head_kind::recdef) {
      // Left head is not a recursion constant here, as the rule requires.
      push(a, b);
      neutral unfolded = unfold(b);
      bool r = eq_neutral(a, unfolded);
      delta.pop_back();
      return r;
    }
    if (a.h.tag != b.h.tag || a.h.name != b.h.name) {
      unequal("head mismatch: '" + a.h.name + "' vs '" + b.h.name + "'");
      return false;
    }
    return eq_spine(a.args, b.args);
  }

  bool eq_spine(const spine& a, const spine& b) {
    if (a.size() != b.size()) {
      unequal("spine length mismatch");
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto* ta = std::get_if<term_ptr>(&a[i]);
      const auto* tb = std::get_if<term_ptr>(&b[i]);
      if ((ta == nullptr) != (tb == nullptr)) {
        unequal("prepattern argument compared against an ordinary argument");
        return false;
      }
      if (ta) {
        if (!eq_term(**ta, **tb)) return false;
      } else {
        const auto& pa = std::get<prepat_arg>(a[i]);
        const auto& pb = std::get<prepat_arg>(b[i]);
        if (pa.var != pb.var) {
          unequal("prepattern variables differ: '" + pa.var + "' vs '" + pb.var + "'");
          return false;
        }
      }
    }
    return true;
  }
};

}  // namespace

eq_result equal_terms(const signature& sig, const std::vector<std::string>& theta,
                      const term& lhs, const term& rhs, const eq_options& opts) {
  (void)theta;  // goals carry their free variables by name
  engine e{sig, opts};
  eq_result out;
  try {
    bool equal = e.eq_term(lhs, rhs);
    out.verdict = equal ? eq_verdict::equal : eq_verdict::unequal;
    if (!equal) out.reason = e.why_unequal.empty() ? "terms differ" : e.why_unequal;
  } catch (const eq_abort& a) {
    out.verdict = eq_verdict::error;
    out.reason = a.message;
  } catch (const subst_error& s) {
    out.verdict = eq_verdict::error;
    out.reason = s.what();
  }
  out.max_assumptions = e.max_delta;
  return out;
}

// -- the closed-form assumption bound ------------------------------------

namespace {

struct measure {
  std::size_t max_breadth = 1;
  std::size_t max_depth = 1;
  std::size_t max_abstraction = 0;

  void see_term(const term& m, std::size_t depth, std::size_t lams) {
    max_depth = std::max(max_depth, depth);
    if (auto* l = std::get_if<lam>(&m)) {
      max_abstraction = std::max(max_abstraction, lams + 1);
      see_term(*l->body, depth + 1, lams + 1);
      return;
    }
    const auto& r = std::get<neutral>(m);
    max_breadth = std::max(max_breadth, std::max<std::size_t>(r.args.size(), 1));
    for (const auto& e : r.args)
      if (auto* t = std::get_if<term_ptr>(&e)) see_term(**t, depth + 1, 0);
  }

  void see_type(const ctype& a, std::size_t lams) {
    if (auto* pi = std::get_if<pi_type>(&a)) {
      max_abstraction = std::max(max_abstraction, lams + 1);
      see_type(*pi->domain, 0);
      see_type(*pi->codomain, lams + 1);
      return;
    }
    const auto& at = std::get<atomic>(a);
    max_breadth = std::max(max_breadth, std::max<std::size_t>(at.args.size(), 1));
    for (const auto& e : at.args)
      if (auto* t = std::get_if<term_ptr>(&e)) see_term(**t, 1, 0);
  }
};

}  // namespace

double log10_equation_bound(const signature& sig) {
  measure ms;
  double defs = 0;
  double consts = 0;
  for (const auto& d : sig.decls()) {
    if (d.type) ms.see_type(*d.type, 0);
    if (d.body) ms.see_term(*d.body, 1, 0);
    if (d.tag == decl_kind::definition) defs += 1;
    else consts += 1;
  }
  double b = static_cast<double>(ms.max_breadth);
  double dep = static_cast<double>(ms.max_depth);
  double l = static_cast<double>(ms.max_abstraction);
  // Subterm count of any unfolding, bounded by a geometric sum in the breadth.
  double p = (b <= 1.0) ? dep : (std::pow(b, dep) - 1.0) / (b - 1.0);
  double base = (l + 1.0) * p;
  double exponent = 1.0 + consts + defs + base;
  return exponent * std::log10(std::max(base, 2.0));
}

}  // namespace colf
