#include "colf/expansion.hpp"

#include <sstream>

#include "colf/subst.hpp"
#include "colf/validity.hpp"

namespace colf {

namespace {

bohm_ptr mk_bottom() {
  static const bohm_ptr b = std::make_shared<bohm>(bohm_bottom{});
  return b;
}

struct expander {
  const signature& sig;
  // Consecutive unfoldings without consuming depth are bounded by the number
  // of definitions: each one exposes a non-recursive head, so a longer chain
  // means a cycle that contractiveness should have ruled out.
  int fuel_limit;

  bohm_ptr exp_term(const term& m, int depth, int fuel) {
    if (depth <= 0) return mk_bottom();
    if (const auto* l = std::get_if<lam>(&m)) {
      return std::make_shared<bohm>(bohm_lam{l->var, exp_term(*l->body, depth, fuel)});
    }
    const auto& n = std::get<neutral>(m);
    if (n.h.tag == head_kind::recdef) return exp_unfold(n, depth, fuel);
    bohm_head out{n.h, {}};
    out.args.reserve(n.args.size());
    for (const auto& e : n.args) {
      if (const auto* t = std::get_if<term_ptr>(&e)) {
        out.args.push_back(exp_term(**t, depth - 1, 0));
      } else {
        out.args.push_back(bohm_leaf{std::get<prepat_arg>(e).var});
      }
    }
    return std::make_shared<bohm>(std::move(out));
  }

  bohm_ptr exp_unfold(const neutral& n, int depth, int fuel) {
    if (fuel >= fuel_limit) {
      throw expansion_error(expansion_error::reason::fuel_exhausted,
                            "unfolding of '" + n.h.name + "' does not reach a head");
    }
    const decl* d = sig.find(n.h.name);
    if (d == nullptr || d->tag != decl_kind::definition || !d->body) {
      throw expansion_error(expansion_error::reason::unknown_constant,
                            "unknown recursive constant '" + n.h.name + "'");
    }
    if (!is_prepattern_spine(n.args)) {
      throw expansion_error(expansion_error::reason::non_prepattern_spine,
                            "'" + n.h.name + "' applied to a non-renaming argument list");
    }
    if (!is_contractive(*d->body)) {
      throw expansion_error(expansion_error::reason::non_contractive,
                            "definition of '" + n.h.name + "' is not contractive");
    }
    term unfolded = reduce_spine(n.args, erase(*d->type), *d->body);
    return exp_term(unfolded, depth, fuel + 1);
  }
};

struct bound_pairs {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool var_eq(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == a) return it->second == b;
      if (it->second == b) return false;
    }
    return a == b;
  }
};

bool approx_eq(const bohm& a, const bohm& b, bound_pairs& bp) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<bohm_bottom>(a)) return true;
  if (const auto* la = std::get_if<bohm_lam>(&a)) {
    const auto& lb = std::get<bohm_lam>(b);
    bp.pairs.emplace_back(la->var, lb.var);
    bool r = approx_eq(*la->body, *lb.body, bp);
    bp.pairs.pop_back();
    return r;
  }
  const auto& ha = std::get<bohm_head>(a);
  const auto& hb = std::get<bohm_head>(b);
  if (ha.h.tag != hb.h.tag) return false;
  if (ha.h.tag == head_kind::variable) {
    if (!bp.var_eq(ha.h.name, hb.h.name)) return false;
  } else if (ha.h.name != hb.h.name) {
    return false;
  }
  if (ha.args.size() != hb.args.size()) return false;
  for (size_t i = 0; i < ha.args.size(); ++i) {
    const auto& ea = ha.args[i];
    const auto& eb = hb.args[i];
    if (ea.index() != eb.index()) return false;
    if (const auto* ta = std::get_if<bohm_ptr>(&ea)) {
      if (!approx_eq(**ta, **std::get_if<bohm_ptr>(&eb), bp)) return false;
    } else if (!bp.var_eq(std::get<bohm_leaf>(ea).var, std::get<bohm_leaf>(eb).var)) {
      return false;
    }
  }
  return true;
}

void print_rec(const bohm& b, int indent, std::ostringstream& out) {
  for (int i = 0; i < indent; ++i) out << "  ";
  if (std::holds_alternative<bohm_bottom>(b)) {
    out << "_|_\n";
    return;
  }
  if (const auto* l = std::get_if<bohm_lam>(&b)) {
    out << "[" << l->var << "]\n";
    print_rec(*l->body, indent + 1, out);
    return;
  }
  const auto& h = std::get<bohm_head>(b);
  out << h.h.name << "\n";
  for (const auto& e : h.args) {
    if (const auto* t = std::get_if<bohm_ptr>(&e)) {
      print_rec(**t, indent + 1, out);
    } else {
      for (int i = 0; i <= indent; ++i) out << "  ";
      out << "[" << std::get<bohm_leaf>(e).var << "]\n";
    }
  }
}

}  // namespace

bohm_ptr expand(const signature& sig, const term& m, int depth) {
  expander e{sig, static_cast<int>(sig.size()) + 1};
  return e.exp_term(m, depth, 0);
}

bool approx_equal(const bohm& a, const bohm& b) {
  bound_pairs bp;
  return approx_eq(a, b, bp);
}

bohm_ptr truncate(const bohm& b, int depth) {
  if (depth <= 0) return mk_bottom();
  if (std::holds_alternative<bohm_bottom>(b)) return mk_bottom();
  if (const auto* l = std::get_if<bohm_lam>(&b)) {
    return std::make_shared<bohm>(bohm_lam{l->var, truncate(*l->body, depth)});
  }
  const auto& h = std::get<bohm_head>(b);
  bohm_head out{h.h, {}};
  out.args.reserve(h.args.size());
  for (const auto& e : h.args) {
    if (const auto* t = std::get_if<bohm_ptr>(&e)) {
      out.args.push_back(truncate(**t, depth - 1));
    } else {
      out.args.push_back(e);
    }
  }
  return std::make_shared<bohm>(std::move(out));
}

std::string print_bohm(const bohm& b) {
  std::ostringstream out;
  print_rec(b, 0, out);
  return out.str();
}

}  // namespace colf
