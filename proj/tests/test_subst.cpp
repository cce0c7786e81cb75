#include "doctest.h"

#include "colf/print.hpp"
#include "colf/subst.hpp"
#include "colf/syntax.hpp"

#include "support.hpp"

using namespace colf;
using colf::test::load_signature;

namespace {

const signature& basics() {
  static signature sig = load_signature(colf::test::corpus_text("basics_valid.colf"));
  return sig;
}

}  // namespace

TEST_CASE("subst: erasure forgets dependency but keeps arrow shape") {
  const signature& sig = basics();
  // nat -> padding -> pstream
  stype_ptr cocons_sh = erase(*sig.find("cocons")->type);
  CHECK(stype_equal(*cocons_sh, *sarrow(sbase(), sarrow(sbase(), sbase()))));
  // conat
  CHECK(stype_equal(*erase(*sig.find("w2")->type), *sbase()));

  signature sub = load_signature(colf::test::corpus_text("subtyping_classical.colf"));
  // (tp -> tp) -> (tp -> tp) -> tp
  stype_ptr mu_sh = erase(*sub.find("mu")->type);
  stype_ptr oo = sarrow(sbase(), sbase());
  CHECK(stype_equal(*mu_sh, *sarrow(oo, sarrow(oo, sbase()))));
  CHECK(print_stype(*mu_sh) == "(* -> *) -> (* -> *) -> *");
}

TEST_CASE("subst: renaming rewrites heads and renaming arguments") {
  // x ([x]) becomes y ([y])
  term_ptr m = make_var("x", {pat_arg("x")});
  term_ptr out = rename_term("y", "x", *m);
  CHECK(alpha_equal(*out, *make_var("y", {pat_arg("y")})));
}

TEST_CASE("subst: renaming respects binders") {
  // [x] f x stays put when renaming x
  term_ptr lam_x = make_lam("x", make_var("f", {term_arg(make_var("x"))}));
  term_ptr out = rename_term("y", "x", *lam_x);
  CHECK(alpha_equal(*out, *lam_x));
}

TEST_CASE("subst: renaming that would capture is an error") {
  // renaming x -> y under [y] f x y would conflate the two
  term_ptr m = make_lam("y", make_var("f", {term_arg(make_var("x")), term_arg(make_var("y"))}));
  CHECK_THROWS_AS((void)rename_term("y", "x", *m), subst_error);
}

TEST_CASE("subst: substituting a bare variable degenerates to renaming") {
  // succ x with x := y, at base shape
  term_ptr m = make_const("succ", {term_arg(make_var("x"))});
  term_ptr out = hsubst_term(make_var("y"), "x", sbase(), *m);
  CHECK(alpha_equal(*out, *make_const("succ", {term_arg(make_var("y"))})));

  // even into a renaming-argument position, where general terms are illegal
  term_ptr r = make_rec("r1", {pat_arg("x")});
  term_ptr out2 = hsubst_term(make_var("y"), "x", sbase(), *r);
  CHECK(alpha_equal(*out2, *make_rec("r1", {pat_arg("y")})));
}

TEST_CASE("subst: general term into a renaming-argument position is an error") {
  term_ptr m = make_rec("r1", {pat_arg("x")});
  term_ptr n = make_const("succ", {term_arg(make_const("zero"))});
  try {
    (void)hsubst_term(n, "x", sbase(), *m);
    FAIL("expected subst_error");
  } catch (const subst_error& e) {
    CHECK(e.why == subst_error::reason::undefined_prepat);
  }
}

TEST_CASE("subst: beta redexes reduce hereditarily") {
  // ((\x. x) zero) collapses when f := \x. x is substituted into f zero
  term_ptr id = make_lam("x", make_var("x"));
  term_ptr m = make_var("f", {term_arg(make_const("zero"))});
  term_ptr out = hsubst_term(id, "f", sarrow(sbase(), sbase()), *m);
  CHECK(alpha_equal(*out, *make_const("zero")));
}

TEST_CASE("subst: shadowing binder is rejected (inputs are renamed apart)") {
  // hsubst requires the target term's binders to be fresh for the substituted
  // variable; a shadowing binder signals that the caller skipped renaming.
  term_ptr m = make_lam("x", make_var("x"));
  CHECK_THROWS_AS((void)hsubst_term(make_const("zero"), "x", sbase(), *m),
                  subst_error);
  try {
    (void)hsubst_term(make_const("zero"), "x", sbase(), *m);
    CHECK(false);
  } catch (const subst_error& e) {
    CHECK(e.why == subst_error::reason::shape_mismatch);
  }
}

TEST_CASE("subst: spine reduction against lambdas") {
  // ([x]) applied to \y. cocons y p  ==>  cocons x p
  term_ptr body = make_neutral(head{head_kind::constant, "cocons"},
                               {term_arg(make_var("y")), term_arg(make_var("p"))});
  term_ptr f = make_lam("y", body);
  neutral out = reduce_spine({pat_arg("x")}, sarrow(sbase(), sbase()), *f);
  CHECK(alpha_equal(out, std::get<neutral>(*make_neutral(
                             head{head_kind::constant, "cocons"},
                             {term_arg(make_var("x")), term_arg(make_var("p"))}))));

  // (\x. x; ()) applied to \f. f zero  ==>  zero
  term_ptr id = make_lam("x", make_var("x"));
  term_ptr g = make_lam("f", make_var("f", {term_arg(make_const("zero"))}));
  neutral out2 = reduce_spine({term_arg(id)}, sarrow(sarrow(sbase(), sbase()), sbase()), *g);
  CHECK(alpha_equal(out2, std::get<neutral>(*make_const("zero"))));
}

TEST_CASE("subst: applying a neutral head appends to its spine") {
  // An eta-short neutral applied further behaves as its eta-long form would:
  // the arguments land on the spine.
  term_ptr f = make_const("pad");
  neutral out = reduce_spine({term_arg(make_const("s1"))}, sarrow(sbase(), sbase()), *f);
  CHECK(out.h.tag == head_kind::constant);
  CHECK(out.h.name == "pad");
  REQUIRE(out.args.size() == 1);
}

TEST_CASE("subst: shape mismatch is reported, not crashed") {
  term_ptr id = make_lam("x", make_var("x"));

  // an abstraction left over with nothing to consume
  CHECK_THROWS_AS((void)reduce_spine({}, sarrow(sbase(), sbase()), *id), subst_error);

  // a spine longer than the erasure of the type
  try {
    (void)reduce_spine({term_arg(make_const("zero"))}, sbase(), *id);
    CHECK(false);
  } catch (const subst_error& e) {
    CHECK(e.why == subst_error::reason::shape_mismatch);
  }
}

TEST_CASE("subst: types and kinds substitute through argument spines") {
  const signature& sig = basics();
  // eq N N with N := w2
  ctype_ptr a = make_atomic("eq", {term_arg(make_var("N")), term_arg(make_var("N"))});
  ctype_ptr out = hsubst_type(make_rec("w2"), "N", sbase(), *a);
  ctype_ptr want = make_atomic("eq", {term_arg(make_rec("w2")), term_arg(make_rec("w2"))});
  CHECK(alpha_equal(*out, *want));
  (void)sig;
}
