#include <optional>
#include <string>
#include <vector>

#include "colf/driver.hpp"
#include "colf/syntax.hpp"
#include "colf/validity.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colf;
using colf::test::load_corpus_signature;
using colf::test::load_signature;

namespace {

const signature& basics_sig() {
  static signature sig = load_corpus_signature("basics.colf");
  return sig;
}

const signature& streams_sig() {
  static signature sig = load_corpus_signature("streams.colf");
  return sig;
}

std::optional<guardedness_violation> guarded_for(const signature& sig, const std::string& name) {
  const decl* d = sig.find(name);
  REQUIRE(d != nullptr);
  REQUIRE(d->body != nullptr);
  return check_guarded(sig, name, *d->body);
}

}  // namespace

TEST_CASE("validity: family classification and priorities") {
  const signature& sig = basics_sig();

  CHECK(priority_of(sig, "nat") == std::size_t{0});
  CHECK(priority_of(sig, "conat") == std::size_t{4});
  CHECK(priority_of(sig, "eq") == std::size_t{9});
  CHECK(priority_of(sig, "padding") == std::size_t{12});
  CHECK(priority_of(sig, "pstream") == std::size_t{13});
  // Priorities exist only for type families.
  CHECK(!priority_of(sig, "zero").has_value());
  CHECK(!priority_of(sig, "w2").has_value());
  CHECK(!priority_of(sig, "nosuch").has_value());

  CHECK(classify(sig, "nat") == polarity::inductive);
  CHECK(classify(sig, "padding") == polarity::inductive);
  CHECK(classify(sig, "conat") == polarity::coinductive);
  CHECK(classify(sig, "pstream") == polarity::coinductive);
  // Constructors inherit the polarity of the family they build.
  CHECK(classify(sig, "succ") == polarity::inductive);
  CHECK(classify(sig, "cosucc") == polarity::coinductive);
  CHECK(classify(sig, "cocons") == polarity::coinductive);
  CHECK(classify(sig, "pad") == polarity::inductive);
  // Definitions and unknown names have no polarity.
  CHECK(!classify(sig, "w2").has_value());
  CHECK(!classify(sig, "nosuch").has_value());

  CHECK(target_family(sig, "cocons") == std::string("pstream"));
  CHECK(target_family(sig, "next") == std::string("padding"));
  CHECK(target_family(sig, "pad") == std::string("padding"));
  CHECK(target_family(sig, "succ") == std::string("nat"));
  CHECK(target_family(sig, "eq/refl") == std::string("eq"));
  // Only constructors have a target family.
  CHECK(!target_family(sig, "nat").has_value());
  CHECK(!target_family(sig, "w2").has_value());
  CHECK(!target_family(sig, "nosuch").has_value());
}

TEST_CASE("validity: trace validity needs a dominating coinductive constructor") {
  const signature& sig = basics_sig();

  // pstream (the highest-priority family here) is coinductive and cocons
  // attains the maximum, so interleaved padding constructors are fine.
  CHECK(valid_trace(sig, {"cocons", "pad", "pad", "next"}));
  CHECK(valid_trace(sig, {"cocons"}));
  CHECK(valid_trace(sig, {"cosucc"}));
  CHECK(valid_trace(sig, {"next", "cocons"}));

  // Purely inductive cycles are invalid no matter their length.
  CHECK(!valid_trace(sig, {"pad"}));
  CHECK(!valid_trace(sig, {"pad", "pad"}));
  CHECK(!valid_trace(sig, {"succ"}));
  CHECK(!valid_trace(sig, {"next"}));

  // The maximum priority decides: padding outranks conat by declaration
  // order, so a cosucc somewhere below does not rescue a pad cycle.
  CHECK(!valid_trace(sig, {"cosucc", "pad"}));
  // ... while a lower-priority inductive constructor under cocons is fine.
  CHECK(valid_trace(sig, {"succ", "cocons"}));

  // Empty traces and non-constructor names are conservatively invalid.
  CHECK(!valid_trace(sig, {}));
  CHECK(!valid_trace(sig, {"nosuch"}));
  CHECK(!valid_trace(sig, {"w2"}));
}

TEST_CASE("validity: guardedness verdicts for the mixed nat/stream corpus") {
  const signature& sig = basics_sig();

  // Accepted definitions.
  for (const char* name : {"w2", "w3", "s1", "s3", "s4", "p5", "eqw2w3"}) {
    CAPTURE(name);
    CHECK(!guarded_for(sig, name).has_value());
  }

  // w1 = succ w1: the only cycle passes through an inductive constructor.
  auto w1 = guarded_for(sig, "w1");
  REQUIRE(w1.has_value());
  CHECK(w1->why == guardedness_violation::reason::invalid_trace);
  CHECK(w1->trace == std::vector<std::string>{"succ"});

  // p2 = pad p2.
  auto p2 = guarded_for(sig, "p2");
  REQUIRE(p2.has_value());
  CHECK(p2->why == guardedness_violation::reason::invalid_trace);
  CHECK(p2->trace == std::vector<std::string>{"pad"});

  // p6 = pad p7 and p7 = pad p6: the cycle is found through the partner's
  // body, two constructors deep.
  auto p6 = guarded_for(sig, "p6");
  REQUIRE(p6.has_value());
  CHECK(p6->why == guardedness_violation::reason::invalid_trace);
  CHECK(p6->trace == std::vector<std::string>{"pad", "pad"});

  auto p7 = guarded_for(sig, "p7");
  REQUIRE(p7.has_value());
  CHECK(p7->why == guardedness_violation::reason::invalid_trace);
  CHECK(p7->trace == std::vector<std::string>{"pad", "pad"});
}

TEST_CASE("validity: contractivity looks through the lambda prefix only") {
  CHECK(is_contractive(*make_const("zero")));
  CHECK(is_contractive(*make_var("x")));
  CHECK(is_contractive(*make_lam("x", make_const("cosucc", {term_arg(make_var("x"))}))));

  CHECK(!is_contractive(*make_rec("w2")));
  CHECK(!is_contractive(*make_lam("x", make_rec("r1", {pat_arg("x")}))));

  // check_guarded reports the same as its own first step.
  const signature& sig = basics_sig();
  auto v = check_guarded(sig, "d", *make_rec("w2"));
  REQUIRE(v.has_value());
  CHECK(v->why == guardedness_violation::reason::non_contractive);
  CHECK(v->trace.empty());
  CHECK(v->detail.find("'d'") != std::string::npos);

  auto vl = check_guarded(sig, "d", *make_lam("x", make_rec("w2")));
  REQUIRE(vl.has_value());
  CHECK(vl->why == guardedness_violation::reason::non_contractive);
}

TEST_CASE("validity: recursion constants must take renaming arguments") {
  const signature& sig = streams_sig();

  // d = cocons zero (next (r1 (succ zero))): r1 is applied to a non-variable.
  term_ptr succ_zero = make_const("succ", {term_arg(make_const("zero"))});
  term_ptr bad = make_const(
      "cocons", {term_arg(make_const("zero")),
                 term_arg(make_const("next", {term_arg(make_rec("r1", {term_arg(succ_zero)}))}))});
  auto v = check_guarded(sig, "d", *bad);
  REQUIRE(v.has_value());
  CHECK(v->why == guardedness_violation::reason::non_prepattern_spine);
  CHECK(v->trace == std::vector<std::string>{"cocons", "next"});
  CHECK(v->detail.find("r1") != std::string::npos);

  // The same reference with a variable argument is acceptable to the walker.
  term_ptr ok = make_lam(
      "x", make_const("cocons", {term_arg(make_var("x")),
                                 term_arg(make_const(
                                     "next", {term_arg(make_rec("r1", {pat_arg("x")}))}))}));
  CHECK(!check_guarded(sig, "d", *ok).has_value());

  // References to names without a definition body are flagged.
  term_ptr ghost = make_const("cosucc", {term_arg(make_rec("ghost"))});
  auto u = check_guarded(basics_sig(), "g", *ghost);
  REQUIRE(u.has_value());
  CHECK(u->why == guardedness_violation::reason::unknown_constant);
  CHECK(u->trace == std::vector<std::string>{"cosucc"});
  CHECK(u->detail.find("ghost") != std::string::npos);
}

TEST_CASE("validity: sibling branches re-explore shared definitions") {
  // d's first branch reaches d through a coinductive constructor, but the
  // second branch reaches it through inductive ones only.  Finding the bad
  // cycle requires re-entering e's body on the second branch, so the set of
  // visited definitions must be scoped to the path, not global to the walk.
  const std::string text =
      "p : type.\n"
      "s : cotype.\n"
      "cs : p -> s.\n"
      "cboth : s -> p -> p.\n"
      "cp : p -> p.\n"
      "d : p = cboth (cs e) (cp e).\n"
      "e : p = cp d.\n";
  signature sig = load_signature(text);

  auto vd = check_guarded(sig, "d", *sig.find("d")->body);
  REQUIRE(vd.has_value());
  CHECK(vd->why == guardedness_violation::reason::invalid_trace);
  CHECK(vd->trace == std::vector<std::string>{"cboth", "cp", "cp"});

  auto ve = check_guarded(sig, "e", *sig.find("e")->body);
  REQUIRE(ve.has_value());
  CHECK(ve->why == guardedness_violation::reason::invalid_trace);
  CHECK(ve->trace == std::vector<std::string>{"cp", "cboth", "cp"});

  // The full pipeline rejects both definitions.
  file_report rep = check_text(text);
  CHECK(colf::test::report_verdict(rep, "d") == verdict::guardedness_error);
  CHECK(colf::test::report_verdict(rep, "e") == verdict::guardedness_error);
  for (const char* name : {"p", "s", "cs", "cboth", "cp"}) {
    CAPTURE(name);
    CHECK(colf::test::report_verdict(rep, name) == verdict::ok);
  }
}

TEST_CASE("validity: prepattern shapes") {
  const signature& sig = streams_sig();

  // Recursive definitions elaborate to prepattern types; constructors do not.
  CHECK(is_prepattern_type(*sig.find("r1")->type));
  CHECK(is_prepattern_type(*sig.find("r2")->type));
  CHECK(!is_prepattern_type(*sig.find("cocons")->type));
  CHECK(!is_prepattern_type(*sig.find("succ")->type));
  // Atomic types are trivially prepattern.
  CHECK(is_prepattern_type(*basics_sig().find("w2")->type));

  CHECK(is_prepattern_spine({}));
  CHECK(is_prepattern_spine({pat_arg("x"), pat_arg("y")}));
  CHECK(!is_prepattern_spine({term_arg(make_var("x"))}));
  CHECK(!is_prepattern_spine({pat_arg("x"), term_arg(make_const("zero"))}));
}
