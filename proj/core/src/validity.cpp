#include "colf/validity.hpp"

#include <set>

namespace colf {

bool is_prepattern_type(const ctype& a) {
  const ctype* cur = &a;
  while (auto* pi = std::get_if<pi_type>(cur)) {
    if (!pi->prepat) return false;
    cur = pi->codomain.get();
  }
  return true;
}

bool is_prepattern_spine(const spine& s) {
  for (const auto& e : s)
    if (!std::holds_alternative<prepat_arg>(e)) return false;
  return true;
}

bool is_contractive(const term& m) {
  const term* cur = &m;
  while (auto* l = std::get_if<lam>(cur)) cur = l->body.get();
  return std::get<neutral>(*cur).h.tag != head_kind::recdef;
}

bool valid_trace(const signature& sig, const std::vector<std::string>& constructors) {
  if (constructors.empty()) return false;
  std::size_t max_priority = 0;
  bool have_priority = false;
  // First pass: the maximal priority of any family on the trace.
  for (const auto& c : constructors) {
    auto fam = target_family(sig, c);
    if (!fam) return false;  // unknown or not a constructor: conservatively invalid
    auto pr = priority_of(sig, *fam);
    if (!pr) return false;
    if (!have_priority || *pr > max_priority) {
      max_priority = *pr;
      have_priority = true;
    }
  }
  // Second pass: some coinductive constructor attains it.
  for (const auto& c : constructors) {
    auto fam = target_family(sig, c);
    auto pr = priority_of(sig, *fam);
    if (*pr == max_priority && classify(sig, c) == polarity::coinductive) return true;
  }
  return false;
}

namespace {

struct guard_walker {
  const signature& sig;
  const std::string& r;
  std::set<std::string> visited;        // Q: definitions whose bodies were entered
  std::vector<std::string> trace;       // C, as the constructor path being explored
  std::optional<guardedness_violation> violation;

  void report(guardedness_violation::reason why, std::string detail) {
    if (violation) return;  // keep the first witness
    violation = guardedness_violation{why, trace, std::move(detail)};
  }

  void walk_spine(const spine& s) {
    for (const auto& e : s) {
      if (violation) return;
      if (auto* t = std::get_if<term_ptr>(&e)) walk(**t);
    }
  }

  void walk(const term& m) {
    if (violation) return;
    if (auto* l = std::get_if<lam>(&m)) {
      walk(*l->body);
      return;
    }
    const auto& ne = std::get<neutral>(m);
    switch (ne.h.tag) {
      case head_kind::constant: {
        trace.push_back(ne.h.name);
        walk_spine(ne.args);
        trace.pop_back();
        return;
      }
      case head_kind::variable:
        walk_spine(ne.args);
        return;
      case head_kind::recdef: {
        if (ne.h.name == r) {
          if (!valid_trace(sig, trace))
            report(guardedness_violation::reason::invalid_trace,
                   "cycle through '" + r + "' has no dominating coinductive constructor");
          return;  // no descent into a self-occurrence
        }
        if (visited.count(ne.h.name)) return;
        if (!is_prepattern_spine(ne.args)) {
          report(guardedness_violation::reason::non_prepattern_spine,
                 "recursion constant '" + ne.h.name + "' applied to a non-variable argument");
          return;
        }
        const decl* d = sig.find(ne.h.name);
        if (!d || d->tag != decl_kind::definition || !d->body) {
          report(guardedness_violation::reason::unknown_constant,
                 "unknown recursion constant '" + ne.h.name + "'");
          return;
        }
        // Q is scoped to the path: the same definition may need another visit
        // under a different constructor trace on a sibling branch.
        visited.insert(ne.h.name);
        walk(*d->body);
        visited.erase(ne.h.name);
        return;
      }
    }
  }
};

}  // namespace

std::optional<guardedness_violation> check_guarded(const signature& sig,
                                                   const std::string& r,
                                                   const term& body) {
  if (!is_contractive(body)) {
    guardedness_violation v;
    v.why = guardedness_violation::reason::non_contractive;
    v.detail = "definition of '" + r + "' has a recursion constant at its head";
    return v;
  }
  guard_walker w{sig, r};
  w.walk(body);
  return w.violation;
}

}  // namespace colf
