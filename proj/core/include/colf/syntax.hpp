#pragma once

// Core term language in canonical spine form.
//
// Terms are either lambdas or neutrals (a head applied to a spine); there is
// no application node, so beta redexes are not representable.  Spine entries
// are either ordinary term arguments or prepattern variables [x].  Types are
// pi types (ordinary or prepattern flavored) over atomic types; kinds end in
// `type` or `cotype`, which decides whether a family's constructors are
// treated as inductive or coinductive.
//
// All binders in a signature are assumed renamed apart (globally unique).
// The elaborator guarantees this for anything it produces; hand-built values
// in tests must respect it.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "colf/source.hpp"

namespace colf {

struct term;
using term_ptr = std::shared_ptr<const term>;

enum class head_kind { variable, constant, recdef };

struct head {
  head_kind tag = head_kind::variable;
  std::string name;
  bool operator==(const head&) const = default;
};

// Prepattern spine entry [x]: a variable that may only ever be renamed,
// never substituted by a non-variable term.
struct prepat_arg {
  std::string var;
  bool operator==(const prepat_arg&) const = default;
};

using spine_entry = std::variant<term_ptr, prepat_arg>;
using spine = std::vector<spine_entry>;

struct neutral {
  head h;
  spine args;
};

struct lam {
  std::string var;
  term_ptr body;
  // Set by prepattern inference when `var` occurs as a prepattern argument in
  // `body`.  The kernel then binds the variable prepattern-flavored even when
  // the lambda is checked against an ordinary pi type.
  bool prepat_marked = false;
};

struct term : std::variant<lam, neutral> {
  using variant::variant;
};

// -- types -------------------------------------------------------------

struct ctype;
using ctype_ptr = std::shared_ptr<const ctype>;

struct atomic {
  std::string family;
  spine args;
};

struct pi_type {
  std::string var;
  bool prepat = false;
  ctype_ptr domain;
  ctype_ptr codomain;
};

struct ctype : std::variant<pi_type, atomic> {
  using variant::variant;
};

// -- kinds -------------------------------------------------------------

struct kind;
using kind_ptr = std::shared_ptr<const kind>;

struct kind_base {
  bool coinductive = false;  // type vs cotype
};

struct kind_pi {
  std::string var;
  bool prepat = false;
  ctype_ptr domain;
  kind_ptr codomain;
};

struct kind : std::variant<kind_pi, kind_base> {
  using variant::variant;
};

// -- signatures ---------------------------------------------------------

enum class decl_kind { family, constructor, definition };

struct decl {
  decl_kind tag = decl_kind::constructor;
  std::string name;
  kind_ptr family_kind;  // family only
  ctype_ptr type;        // constructor and definition
  term_ptr body;         // definition only
  // Number of leading pi binders inserted by the elaborator; use sites supply
  // these as inferred arguments.  Zero for anything hand-built.
  int implicit_args = 0;
  source_span span;
};

// Declaration order is priority order: families declared later have higher
// priority.  Names are pairwise distinct.
class signature {
 public:
  // Appends a declaration; returns false (and leaves the signature unchanged)
  // if the name is already taken.
  bool append(decl d);

  const decl* find(std::string_view name) const;
  // Position in declaration order; this is the priority of a type family.
  std::optional<std::size_t> position(std::string_view name) const;

  // Installs the body of an already-appended definition; used by two-pass
  // elaboration, where classifiers land before bodies.  False if the name is
  // not a definition.
  bool set_body(std::string_view name, term_ptr body);

  const std::vector<decl>& decls() const { return decls_; }
  std::size_t size() const { return decls_.size(); }
  const decl& at(std::size_t i) const { return decls_[i]; }

 private:
  std::vector<decl> decls_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Priority of a type family (its declaration position).  Nullopt if the name
// is missing or not a family.
std::optional<std::size_t> priority_of(const signature& sig, std::string_view family);

enum class polarity { inductive, coinductive };

// Classification of a family (by its kind's tail) or of a constructor (by the
// family its type targets).
std::optional<polarity> classify(const signature& sig, std::string_view name);

// Family an atomic type's head; for a constructor, the family of the tail of
// its type.  Nullopt for definitions and unknown names.
std::optional<std::string> target_family(const signature& sig, std::string_view constructor);

// What a name may legally refer to from a given declaration position:
// everything strictly earlier, plus (inside recursive-definition bodies only)
// any recursive definition, which is the single permitted forward reference.
enum class ref_site { declaration, recursive_body };

const decl* resolve(const signature& sig, std::string_view name, ref_site site,
                    std::size_t from_position);

// -- typing contexts -----------------------------------------------------

struct ctx_entry {
  std::string var;
  ctype_ptr type;
  bool prepat = false;
};

class context {
 public:
  void push(std::string var, ctype_ptr type, bool prepat);
  void pop();
  const ctx_entry* lookup(std::string_view var) const;
  std::size_t size() const { return entries_.size(); }
  const ctx_entry& at(std::size_t i) const { return entries_[i]; }
  std::vector<std::string> names() const;

 private:
  std::vector<ctx_entry> entries_;
};

// -- construction helpers -------------------------------------------------

term_ptr make_lam(std::string var, term_ptr body, bool prepat_marked = false);
term_ptr make_neutral(head h, spine args);
term_ptr make_neutral(neutral r);
term_ptr make_var(std::string name, spine args = {});
term_ptr make_const(std::string name, spine args = {});
term_ptr make_rec(std::string name, spine args = {});
spine_entry term_arg(term_ptr t);
spine_entry pat_arg(std::string var);

ctype_ptr make_atomic(std::string family, spine args = {});
ctype_ptr make_pi(std::string var, ctype_ptr domain, ctype_ptr codomain, bool prepat = false);
ctype_ptr make_arrow(ctype_ptr domain, ctype_ptr codomain);  // non-dependent, fresh dummy binder

kind_ptr make_kind_base(bool coinductive);
kind_ptr make_kind_pi(std::string var, ctype_ptr domain, kind_ptr codomain, bool prepat = false);

// -- structural utilities --------------------------------------------------

// Free variables in first-occurrence order (heads and prepattern arguments).
std::vector<std::string> free_vars(const term& m);
std::vector<std::string> free_vars(const neutral& r);
bool occurs_free(const term& m, std::string_view var);
bool occurs_free(const ctype& a, std::string_view var);

// Alpha equivalence; free variables must match by name.  Ignores prepattern
// marks on lambdas (they are inferred decoration, not syntax).
bool alpha_equal(const term& a, const term& b);
bool alpha_equal(const neutral& a, const neutral& b);
bool alpha_equal(const ctype& a, const ctype& b);
bool alpha_equal(const kind& a, const kind& b);

}  // namespace colf
