#include <string>
#include <vector>

#include "colf/driver.hpp"
#include "colf/syntax.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colf;
using colf::test::corpus_path;
using colf::test::read_file;

namespace {

const char* corpus_files[] = {
    "basics.colf",
    "basics_valid.colf",
    "streams.colf",
    "subtyping_classical.colf",
    "subtyping_unfold_eq.colf",
    "polarized.colf",
    "meta_encoding.colf",
    "bisim.colf",
};

// Walks a declaration's classifier and body, asserting every referenced
// signature constant is legal from that declaration's position: classifiers
// may only look strictly backwards, bodies may additionally reach recursive
// definitions forwards.
struct resolution_checker {
  const signature& sig;
  std::size_t from = 0;
  ref_site site = ref_site::declaration;
  std::vector<std::string> bad;

  void name(const std::string& n, head_kind k) {
    if (k == head_kind::variable) return;
    if (resolve(sig, n, site, from) == nullptr) bad.push_back(n);
  }
  void term_walk(const term& m) {
    if (const auto* l = std::get_if<lam>(&m)) {
      term_walk(*l->body);
      return;
    }
    const auto& n = std::get<neutral>(m);
    name(n.h.name, n.h.tag);
    spine_walk(n.args);
  }
  void spine_walk(const spine& s) {
    for (const auto& e : s) {
      if (const auto* t = std::get_if<term_ptr>(&e)) term_walk(**t);
    }
  }
  void type_walk(const ctype& a) {
    if (const auto* p = std::get_if<pi_type>(&a)) {
      type_walk(*p->domain);
      type_walk(*p->codomain);
      return;
    }
    const auto& at = std::get<atomic>(a);
    name(at.family, head_kind::constant);
    spine_walk(at.args);
  }
  void kind_walk(const kind& k) {
    if (const auto* p = std::get_if<kind_pi>(&k)) {
      type_walk(*p->domain);
      kind_walk(*p->codomain);
    }
  }
};

}  // namespace

TEST_CASE("corpus: every file matches its expectation table") {
  for (const char* file : corpus_files) {
    CAPTURE(file);
    file_report rep = check_file(corpus_path(file));
    std::string stem(file);
    stem.erase(stem.rfind(".colf"));
    std::vector<expect_entry> expected =
        parse_expectations(read_file(corpus_path(stem + ".expect")));
    REQUIRE(!expected.empty());
    std::vector<std::string> mismatches = compare_expectations(rep, expected);
    for (const auto& m : mismatches) {
      CAPTURE(m);
      CHECK(false);
    }
    CHECK(mismatches.empty());
  }
}

TEST_CASE("corpus: assumption sets stay small on every file") {
  for (const char* file : corpus_files) {
    CAPTURE(file);
    file_report rep = check_file(corpus_path(file));
    CHECK(rep.max_assumptions <= 64);
    CHECK(rep.max_assumptions < eq_options{}.memo_cap);
  }
}

TEST_CASE("corpus: references respect declaration order") {
  for (const char* file : corpus_files) {
    CAPTURE(file);
    file_report rep = check_file(corpus_path(file));
    const signature& sig = rep.sig;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const decl& d = sig.at(i);
      CAPTURE(d.name);

      resolution_checker classifier{sig, i, ref_site::declaration, {}};
      if (d.family_kind) classifier.kind_walk(*d.family_kind);
      if (d.type) classifier.type_walk(*d.type);
      for (const auto& n : classifier.bad) {
        CAPTURE(n);
        CHECK(false);
      }

      resolution_checker body{sig, i, ref_site::recursive_body, {}};
      if (d.body) body.term_walk(*d.body);
      for (const auto& n : body.bad) {
        CAPTURE(n);
        CHECK(false);
      }
    }
  }
}
