#include "colf/syntax.hpp"

#include <algorithm>
#include <atomic>

namespace colf {

std::string to_string(const source_pos& p) {
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

std::string to_string(const source_span& s) {
  return to_string(s.begin) + "-" + to_string(s.end);
}

const char* verdict_name(verdict v) {
  switch (v) {
    case verdict::ok: return "ok";
    case verdict::parse_error: return "parse-error";
    case verdict::type_error: return "type-error";
    case verdict::guardedness_error: return "guardedness-error";
    case verdict::prepattern_error: return "prepattern-error";
  }
  return "type-error";
}

std::string format_diagnostic(const diagnostic& d, const std::string& filename) {
  std::string out = filename + ":" + to_string(d.span.begin) + ": error: " + d.message;
  if (!d.decl.empty()) out += " [decl '" + d.decl + "', " + d.judgment + "]";
  for (const auto& n : d.notes) out += "\n  note: " + n;
  return out;
}

// -- signature --------------------------------------------------------------

bool signature::append(decl d) {
  if (index_.count(d.name)) return false;
  index_.emplace(d.name, decls_.size());
  decls_.push_back(std::move(d));
  return true;
}

bool signature::set_body(std::string_view name, term_ptr body) {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return false;
  decl& d = decls_[it->second];
  if (d.tag != decl_kind::definition) return false;
  d.body = std::move(body);
  return true;
}

const decl* signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &decls_[it->second];
}

std::optional<std::size_t> signature::position(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> priority_of(const signature& sig, std::string_view family) {
  const decl* d = sig.find(family);
  if (!d || d->tag != decl_kind::family) return std::nullopt;
  return sig.position(family);
}

static const atomic* type_tail(const ctype* a) {
  while (a) {
    if (auto* pi = std::get_if<pi_type>(a)) {
      a = pi->codomain.get();
    } else {
      return &std::get<atomic>(*a);
    }
  }
  return nullptr;
}

std::optional<std::string> target_family(const signature& sig, std::string_view constructor) {
  const decl* d = sig.find(constructor);
  if (!d || d->tag != decl_kind::constructor || !d->type) return std::nullopt;
  const atomic* tail = type_tail(d->type.get());
  if (!tail) return std::nullopt;
  return tail->family;
}

std::optional<polarity> classify(const signature& sig, std::string_view name) {
  const decl* d = sig.find(name);
  if (!d) return std::nullopt;
  if (d->tag == decl_kind::family) {
    const kind* k = d->family_kind.get();
    while (k) {
      if (auto* pi = std::get_if<kind_pi>(k)) {
        k = pi->codomain.get();
      } else {
        return std::get<kind_base>(*k).coinductive ? polarity::coinductive : polarity::inductive;
      }
    }
    return std::nullopt;
  }
  if (d->tag == decl_kind::constructor) {
    auto fam = target_family(sig, name);
    if (!fam) return std::nullopt;
    return classify(sig, *fam);
  }
  return std::nullopt;  // definitions are not classified
}

const decl* resolve(const signature& sig, std::string_view name, ref_site site,
                    std::size_t from_position) {
  auto pos = sig.position(name);
  if (!pos) return nullptr;
  const decl& d = sig.at(*pos);
  if (*pos < from_position) return &d;
  if (site == ref_site::recursive_body && d.tag == decl_kind::definition) return &d;
  return nullptr;
}

// -- context ------------------------------------------------------------

void context::push(std::string var, ctype_ptr type, bool prepat) {
  entries_.push_back({std::move(var), std::move(type), prepat});
}

void context::pop() { entries_.pop_back(); }

const ctx_entry* context::lookup(std::string_view var) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->var == var) return &*it;
  return nullptr;
}

std::vector<std::string> context::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.var);
  return out;
}

// -- construction helpers -------------------------------------------------

term_ptr make_lam(std::string var, term_ptr body, bool prepat_marked) {
  return std::make_shared<term>(lam{std::move(var), std::move(body), prepat_marked});
}

term_ptr make_neutral(head h, spine args) {
  return std::make_shared<term>(neutral{std::move(h), std::move(args)});
}

term_ptr make_neutral(neutral r) { return std::make_shared<term>(std::move(r)); }

term_ptr make_var(std::string name, spine args) {
  return make_neutral(head{head_kind::variable, std::move(name)}, std::move(args));
}

term_ptr make_const(std::string name, spine args) {
  return make_neutral(head{head_kind::constant, std::move(name)}, std::move(args));
}

term_ptr make_rec(std::string name, spine args) {
  return make_neutral(head{head_kind::recdef, std::move(name)}, std::move(args));
}

spine_entry term_arg(term_ptr t) { return spine_entry{std::move(t)}; }
spine_entry pat_arg(std::string var) { return spine_entry{prepat_arg{std::move(var)}}; }

ctype_ptr make_atomic(std::string family, spine args) {
  return std::make_shared<ctype>(atomic{std::move(family), std::move(args)});
}

ctype_ptr make_pi(std::string var, ctype_ptr domain, ctype_ptr codomain, bool prepat) {
  return std::make_shared<ctype>(pi_type{std::move(var), prepat, std::move(domain), std::move(codomain)});
}

ctype_ptr make_arrow(ctype_ptr domain, ctype_ptr codomain) {
  // Atomic: arrows are built concurrently when several files are checked in
  // parallel, and the placeholder binders must stay distinct.
  static std::atomic<int> counter{0};
  return make_pi("_a#" + std::to_string(counter.fetch_add(1)), std::move(domain),
                 std::move(codomain), false);
}

kind_ptr make_kind_base(bool coinductive) { return std::make_shared<kind>(kind_base{coinductive}); }

kind_ptr make_kind_pi(std::string var, ctype_ptr domain, kind_ptr codomain, bool prepat) {
  return std::make_shared<kind>(kind_pi{std::move(var), prepat, std::move(domain), std::move(codomain)});
}

// -- free variables ---------------------------------------------------------

namespace {

struct fv_walker {
  std::vector<std::string> out;
  std::vector<std::string> bound;

  bool is_bound(std::string_view v) const {
    return std::find(bound.begin(), bound.end(), v) != bound.end();
  }
  void add(const std::string& v) {
    if (is_bound(v)) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }

  void walk(const term& m) {
    if (auto* l = std::get_if<lam>(&m)) {
      bound.push_back(l->var);
      walk(*l->body);
      bound.pop_back();
    } else {
      walk(std::get<neutral>(m));
    }
  }
  void walk(const neutral& r) {
    if (r.h.tag == head_kind::variable) add(r.h.name);
    for (const auto& e : r.args) {
      if (auto* t = std::get_if<term_ptr>(&e)) {
        walk(**t);
      } else {
        add(std::get<prepat_arg>(e).var);
      }
    }
  }
  void walk(const ctype& a) {
    if (auto* pi = std::get_if<pi_type>(&a)) {
      walk(*pi->domain);
      bound.push_back(pi->var);
      walk(*pi->codomain);
      bound.pop_back();
    } else {
      for (const auto& e : std::get<atomic>(a).args) {
        if (auto* t = std::get_if<term_ptr>(&e)) walk(**t);
        else add(std::get<prepat_arg>(e).var);
      }
    }
  }
};

}  // namespace

std::vector<std::string> free_vars(const term& m) {
  fv_walker w;
  w.walk(m);
  return w.out;
}

std::vector<std::string> free_vars(const neutral& r) {
  fv_walker w;
  w.walk(r);
  return w.out;
}

bool occurs_free(const term& m, std::string_view var) {
  auto fv = free_vars(m);
  return std::find(fv.begin(), fv.end(), var) != fv.end();
}

bool occurs_free(const ctype& a, std::string_view var) {
  fv_walker w;
  w.walk(a);
  return std::find(w.out.begin(), w.out.end(), var) != w.out.end();
}

// -- alpha equivalence --------------------------------------------------

namespace {

// Scoped bijection between bound variables of both sides; free variables must
// agree literally.
struct alpha_ctx {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool var_eq(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == a) return it->second == b;
      if (it->second == b) return false;  // b is bound, a is not its partner
    }
    return a == b;  // both free
  }
};

bool aeq(const term& a, const term& b, alpha_ctx& cx);

bool aeq(const spine& a, const spine& b, alpha_ctx& cx) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto* ta = std::get_if<term_ptr>(&a[i]);
    const auto* tb = std::get_if<term_ptr>(&b[i]);
    if ((ta == nullptr) != (tb == nullptr)) return false;
    if (ta) {
      if (!aeq(**ta, **tb, cx)) return false;
    } else if (!cx.var_eq(std::get<prepat_arg>(a[i]).var, std::get<prepat_arg>(b[i]).var)) {
      return false;
    }
  }
  return true;
}

bool aeq(const neutral& a, const neutral& b, alpha_ctx& cx) {
  if (a.h.tag != b.h.tag) return false;
  if (a.h.tag == head_kind::variable) {
    if (!cx.var_eq(a.h.name, b.h.name)) return false;
  } else if (a.h.name != b.h.name) {
    return false;
  }
  return aeq(a.args, b.args, cx);
}

bool aeq(const term& a, const term& b, alpha_ctx& cx) {
  const auto* la = std::get_if<lam>(&a);
  const auto* lb = std::get_if<lam>(&b);
  if ((la == nullptr) != (lb == nullptr)) return false;
  if (la) {
    cx.pairs.emplace_back(la->var, lb->var);
    bool r = aeq(*la->body, *lb->body, cx);
    cx.pairs.pop_back();
    return r;
  }
  return aeq(std::get<neutral>(a), std::get<neutral>(b), cx);
}

bool aeq(const ctype& a, const ctype& b, alpha_ctx& cx) {
  const auto* pa = std::get_if<pi_type>(&a);
  const auto* pb = std::get_if<pi_type>(&b);
  if ((pa == nullptr) != (pb == nullptr)) return false;
  if (pa) {
    if (pa->prepat != pb->prepat) return false;
    if (!aeq(*pa->domain, *pb->domain, cx)) return false;
    cx.pairs.emplace_back(pa->var, pb->var);
    bool r = aeq(*pa->codomain, *pb->codomain, cx);
    cx.pairs.pop_back();
    return r;
  }
  const auto& aa = std::get<atomic>(a);
  const auto& ab = std::get<atomic>(b);
  return aa.family == ab.family && aeq(aa.args, ab.args, cx);
}

bool aeq(const kind& a, const kind& b, alpha_ctx& cx) {
  const auto* pa = std::get_if<kind_pi>(&a);
  const auto* pb = std::get_if<kind_pi>(&b);
  if ((pa == nullptr) != (pb == nullptr)) return false;
  if (pa) {
    if (pa->prepat != pb->prepat) return false;
    if (!aeq(*pa->domain, *pb->domain, cx)) return false;
    cx.pairs.emplace_back(pa->var, pb->var);
    bool r = aeq(*pa->codomain, *pb->codomain, cx);
    cx.pairs.pop_back();
    return r;
  }
  return std::get<kind_base>(a).coinductive == std::get<kind_base>(b).coinductive;
}

}  // namespace

bool alpha_equal(const term& a, const term& b) {
  alpha_ctx cx;
  return aeq(a, b, cx);
}

bool alpha_equal(const neutral& a, const neutral& b) {
  alpha_ctx cx;
  return aeq(a, b, cx);
}

bool alpha_equal(const ctype& a, const ctype& b) {
  alpha_ctx cx;
  return aeq(a, b, cx);
}

bool alpha_equal(const kind& a, const kind& b) {
  alpha_ctx cx;
  return aeq(a, b, cx);
}

}  // namespace colf
