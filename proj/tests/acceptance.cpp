// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
//
// An optional argv[1] names the colf CLI binary; when present the exit-status
// claims are additionally verified end to end through real subprocesses.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "colf/driver.hpp"
#include "colf/equality.hpp"
#include "colf/expansion.hpp"
#include "colf/syntax.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace colf;
using namespace colf::test;

namespace {

std::string g_cli;  // optional path to the CLI binary

struct criterion {
  int number;
  std::string title;
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    if (details.size() < 12) details.push_back(std::move(why));
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::vector<std::string>& corpus_files() {
  static const std::vector<std::string> files = {
      "basics.colf",
      "basics_valid.colf",
      "streams.colf",
      "subtyping_classical.colf",
      "subtyping_unfold_eq.colf",
      "polarized.colf",
      "meta_encoding.colf",
      "bisim.colf",
  };
  return files;
}

// Expected verdict table for a report; every named declaration must carry the
// given verdict and every other row must be ok.
void expect_table(criterion& c, const file_report& rep,
                  const std::map<std::string, verdict>& special, const std::string& label) {
  for (const decl_row& r : rep.rows) {
    auto it = special.find(r.name);
    verdict want = it == special.end() ? verdict::ok : it->second;
    if (r.v != want) {
      c.fail(label + ": '" + r.name + "' is " + verdict_name(r.v) + ", expected " +
             verdict_name(want));
    }
  }
}

std::map<std::string, verdict> guardedness_on(std::initializer_list<const char*> names) {
  std::map<std::string, verdict> m;
  for (const char* n : names) m[n] = verdict::guardedness_error;
  return m;
}

// -- criterion 1 --------------------------------------------------------------

criterion criterion1() {
  criterion c{1, "mixed signature accepts all but the four unguarded definitions in under 1s"};
  auto start = std::chrono::steady_clock::now();
  file_report rep = check_file(corpus_path("basics.colf"));
  double elapsed = seconds_since(start);

  c.expect(rep.rows.size() == 24, "expected 24 declarations");
  expect_table(c, rep, guardedness_on({"w1", "p2", "p6", "p7"}), "basics");

  // Each rejection comes with a guardedness diagnostic naming the definition.
  for (const char* bad : {"w1", "p2", "p6", "p7"}) {
    bool found = false;
    for (const auto& d : rep.diagnostics) {
      if (d.decl == bad && d.category == verdict::guardedness_error) found = true;
    }
    c.expect(found, std::string("no guardedness diagnostic for '") + bad + "'");
  }
  c.expect(elapsed < 1.0, "checking took " + std::to_string(elapsed) + "s");

  if (!g_cli.empty()) {
    c.expect(run_cli("check " + corpus_path("basics.colf")) == 1,
             "CLI exit status for the mixed file should be 1");
    c.expect(run_cli("check " + corpus_path("basics_valid.colf")) == 0,
             "CLI exit status for the all-valid file should be 0");
  }
  return c;
}

// -- criterion 2 --------------------------------------------------------------

criterion criterion2() {
  criterion c{2, "reflexivity proofs over circular terms check with at most 64 assumptions"};

  struct eq_case {
    const char* file;
    const char* proof;  // declaration whose check exercises the equality (empty: direct query)
    const char* lhs;
    const char* rhs;
  };
  const eq_case cases[] = {
      {"basics.colf", "eqw2w3", "w2", "w3"},
      {"streams.colf", "", "r1", "r2"},
      {"meta_encoding.colf", "eqfix", "fix", "fix2"},
      {"meta_encoding.colf", "eqr", "r", "r'"},
      {"subtyping_unfold_eq.colf", "eqproof", "s_sub_t", "s_sub_t2"},
  };

  for (const eq_case& e : cases) {
    file_report rep = check_file(corpus_path(e.file));
    std::string label = std::string(e.file) + " " + e.lhs + "/" + e.rhs;

    if (*e.proof != '\0') {
      auto v = report_verdict(rep, e.proof);
      c.expect(v.has_value() && *v == verdict::ok,
               label + ": proof '" + e.proof + "' did not check");
      c.expect(rep.max_assumptions <= 64,
               label + ": file needed " + std::to_string(rep.max_assumptions) + " assumptions");
    }

    term_ptr lhs = eta_expand_constant(rep.sig, e.lhs);
    term_ptr rhs = eta_expand_constant(rep.sig, e.rhs);
    if (lhs == nullptr || rhs == nullptr) {
      c.fail(label + ": missing definitions");
      continue;
    }
    eq_result r = equal_terms(rep.sig, {}, *lhs, *rhs);
    c.expect(r.verdict == eq_verdict::equal, label + ": not equal (" + r.reason + ")");
    c.expect(r.max_assumptions <= 64,
             label + ": query needed " + std::to_string(r.max_assumptions) + " assumptions");
  }
  return c;
}

// -- criterion 3 --------------------------------------------------------------

criterion criterion3() {
  criterion c{3, "all four case-study signatures check clean"};

  struct study {
    const char* file;
    std::vector<const char*> must_have;
  };
  const study studies[] = {
      {"subtyping_classical.colf", {"s", "t", "s_sub_t"}},
      {"polarized.colf", {"il_sub_rl", "eg_s_sub_t", "t_empty"}},
      {"meta_encoding.colf", {"fix", "fix2", "eqfix", "r", "r'", "eqr"}},
      {"bisim.colf",
       {"omega", "ev_omega", "od_omega", "isconat_omega", "bisim_ev_z", "bisim_ev_s",
        "bisim_od_s"}},
  };

  for (const study& s : studies) {
    file_report rep = check_file(corpus_path(s.file));
    if (!rep.ok()) {
      for (const decl_row& r : rep.rows) {
        if (r.v != verdict::ok) {
          c.fail(std::string(s.file) + ": '" + r.name + "' is " + verdict_name(r.v));
        }
      }
      for (const auto& d : rep.diagnostics) {
        c.fail(std::string(s.file) + ": " + d.message);
      }
    }
    for (const char* name : s.must_have) {
      auto v = report_verdict(rep, name);
      c.expect(v.has_value(), std::string(s.file) + ": missing declaration '" + name + "'");
    }
    if (!g_cli.empty()) {
      c.expect(run_cli("check " + corpus_path(s.file)) == 0,
               std::string(s.file) + ": CLI exit status should be 0");
    }
  }
  return c;
}

// -- criterion 4 --------------------------------------------------------------

criterion criterion4() {
  criterion c{4, "every equal pair of definitions has agreeing approximants for k in 0..20"};
  std::size_t equal_pairs = 0;

  for (const std::string& file : corpus_files()) {
    file_report rep = check_file(corpus_path(file));
    const signature& sig = rep.sig;

    std::vector<const decl*> defs;
    for (const decl& d : sig.decls()) {
      if (d.tag == decl_kind::definition && d.body != nullptr) defs.push_back(&d);
    }

    for (std::size_t i = 0; i < defs.size(); ++i) {
      for (std::size_t j = i + 1; j < defs.size(); ++j) {
        if (!alpha_equal(*defs[i]->type, *defs[j]->type)) continue;
        term_ptr a = eta_expand_constant(sig, defs[i]->name);
        term_ptr b = eta_expand_constant(sig, defs[j]->name);
        if (a == nullptr || b == nullptr) continue;
        std::string label = file + ": " + defs[i]->name + " = " + defs[j]->name;

        eq_result r = equal_terms(sig, {}, *a, *b);
        if (r.verdict == eq_verdict::error) {
          c.fail(label + ": equality error: " + r.reason);
          continue;
        }
        if (r.verdict != eq_verdict::equal) continue;
        ++equal_pairs;
        for (int k = 0; k <= 20; ++k) {
          if (!approx_equal(*expand(sig, *a, k), *expand(sig, *b, k))) {
            c.fail(label + ": approximants disagree at depth " + std::to_string(k));
            break;
          }
        }
      }
    }
  }
  c.expect(equal_pairs >= 6, "expected at least six equal pairs across the corpus, found " +
                                 std::to_string(equal_pairs));
  c.title += " [" + std::to_string(equal_pairs) + " equal pairs swept]";
  return c;
}

// -- criterion 5 --------------------------------------------------------------

criterion criterion5() {
  criterion c{5, "reclassifying or reordering the stream families rejects s1, s3, s4"};
  std::string original = corpus_text("basics.colf");

  // Mutation A: pstream loses its coinductive classification.
  std::string mut_a = original;
  std::size_t pos = mut_a.find("pstream : cotype.");
  if (pos == std::string::npos) {
    c.fail("mutation A: anchor line not found");
    return c;
  }
  mut_a.replace(pos, std::string("pstream : cotype.").size(), "pstream : type.");

  // Mutation B: padding outranks pstream in declaration order.
  std::string mut_b = original;
  const std::string pair_anchor = "padding : type.\npstream : cotype.";
  pos = mut_b.find(pair_anchor);
  if (pos == std::string::npos) {
    c.fail("mutation B: anchor lines not found");
    return c;
  }
  mut_b.replace(pos, pair_anchor.size(), "pstream : cotype.\npadding : type.");

  // Both mutations reject the stream definitions for different reasons: A
  // removes the coinductive constructor from every stream cycle, B hands the
  // priority maximum to the inductive padding family.  p5 sits on the same
  // cycle as s4 and falls with it.
  auto expected = guardedness_on({"w1", "p2", "p6", "p7", "s1", "s3", "s4", "p5"});

  file_report rep_a = check_text(mut_a);
  c.expect(rep_a.rows.size() == 24, "mutation A: expected 24 declarations");
  expect_table(c, rep_a, expected, "mutation A");

  file_report rep_b = check_text(mut_b);
  c.expect(rep_b.rows.size() == 24, "mutation B: expected 24 declarations");
  expect_table(c, rep_b, expected, "mutation B");

  // The three named stream definitions flipped relative to the original.
  file_report rep_o = check_text(original);
  for (const char* name : {"s1", "s3", "s4"}) {
    c.expect(report_verdict(rep_o, name) == verdict::ok,
             std::string("original: '") + name + "' should be ok");
    c.expect(report_verdict(rep_a, name) == verdict::guardedness_error,
             std::string("mutation A: '") + name + "' should be rejected");
    c.expect(report_verdict(rep_b, name) == verdict::guardedness_error,
             std::string("mutation B: '") + name + "' should be rejected");
  }
  return c;
}

// -- criterion 6 --------------------------------------------------------------

criterion criterion6() {
  criterion c{6, "property suites hold at full size"};

  struct suite {
    const char* name;
    prop_result result;
    std::size_t expected;
  };
  const suite suites[] = {
      {"equality equivalence", prop_eq_equivalence(1000, 0xc01f0001), 1000},
      {"substitution typing", prop_hsubst_typing(200, 0xc01f0002), 200},
      {"expansion/substitution commutation", prop_expand_subst_commute(200, 0xc01f0003), 200},
      {"parser fuzz", prop_parser_fuzz(100000, 0xc01f0004), 100000},
      {"kernel re-check", prop_kernel_recheck(corpus_files()), 1},
  };
  for (const suite& s : suites) {
    c.expect(s.result.count >= s.expected,
             std::string(s.name) + ": ran " + std::to_string(s.result.count) + " of " +
                 std::to_string(s.expected) + " instances");
    for (const auto& f : s.result.failures) {
      c.fail(std::string(s.name) + ": " + f);
    }
  }
  return c;
}

// -- criterion 7 --------------------------------------------------------------

criterion criterion7() {
  criterion c{7, "every file and mutation checks in under 5s without nearing the memo cap"};
  const std::size_t cap = eq_options{}.memo_cap;

  auto check_one = [&](const std::string& label, const std::string& text) {
    auto start = std::chrono::steady_clock::now();
    file_report rep = check_text(text);
    double elapsed = seconds_since(start);
    c.expect(elapsed < 5.0, label + ": took " + std::to_string(elapsed) + "s");
    c.expect(rep.max_assumptions < cap,
             label + ": assumption set hit " + std::to_string(rep.max_assumptions));
    for (const auto& d : rep.diagnostics) {
      if (d.message.find("assumption cap") != std::string::npos) {
        c.fail(label + ": memo cap was reached");
      }
    }
  };

  for (const std::string& file : corpus_files()) check_one(file, corpus_text(file));

  std::string original = corpus_text("basics.colf");
  std::string mut_a = original;
  mut_a.replace(mut_a.find("pstream : cotype."), std::string("pstream : cotype.").size(),
                "pstream : type.");
  check_one("mutation A", mut_a);

  std::string mut_b = original;
  const std::string pair_anchor = "padding : type.\npstream : cotype.";
  mut_b.replace(mut_b.find(pair_anchor), pair_anchor.size(),
                "pstream : cotype.\npadding : type.");
  check_one("mutation B", mut_b);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];

  const struct {
    int number;
    criterion (*run)();
  } table[] = {{1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
               {5, criterion5}, {6, criterion6}, {7, criterion7}};

  std::vector<criterion> results;
  for (const auto& entry : table) {
    try {
      results.push_back(entry.run());
    } catch (const std::exception& e) {
      criterion c{entry.number, "aborted"};
      c.fail(std::string("unexpected exception: ") + e.what());
      results.push_back(c);
    }
  }

  bool all = true;
  for (const criterion& c : results) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title
              << "\n";
    for (const auto& d : c.details) std::cout << "       - " << d << "\n";
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
