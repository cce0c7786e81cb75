// Command-line front end: check a signature file, decide equality of two
// declared constants, or print the depth-k unfolding of one.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "colf/driver.hpp"
#include "colf/equality.hpp"
#include "colf/expansion.hpp"
#include "colf/print.hpp"

namespace {

constexpr int exit_usage = 64;

std::optional<std::string> read_file_opt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Result of checking one input file, with its console output pre-rendered so
// that parallel runs still print in argument order, byte for byte.
struct checked_file {
  std::string out;    // stdout block
  std::string err;    // stderr block
  bool io_error = false;
  bool ok = false;
  std::optional<colf::file_report> report;
};

checked_file check_one(const std::string& file, std::size_t memo_cap, bool machine,
                       bool label) {
  checked_file result;
  colf::driver_options opts;
  opts.check.equality.memo_cap = memo_cap;
  colf::file_report rep;
  try {
    rep = colf::check_file(file, opts);
  } catch (const std::exception& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.io_error = true;
    return result;
  }
  std::ostringstream out;
  std::ostringstream err;
  if (machine) {
    if (label) out << "# file: " << file << "\n";
    out << colf::machine_report(rep);
  } else {
    for (const auto& d : rep.diagnostics) {
      err << colf::format_diagnostic(d, file) << "\n";
    }
    std::size_t bad = 0;
    for (const auto& r : rep.rows) {
      if (r.v != colf::verdict::ok) ++bad;
    }
    if (label) out << file << ": ";
    out << rep.rows.size() << " declarations, " << bad << " with errors\n";
  }
  result.out = out.str();
  result.err = err.str();
  result.ok = rep.ok();
  result.report = std::move(rep);
  return result;
}

int run_check(const std::vector<std::string>& files, std::size_t memo_cap, bool machine,
              const std::string& expect_path) {
  if (!expect_path.empty() && files.size() != 1) {
    std::cerr << "error: --expect requires exactly one input file\n";
    return exit_usage;
  }

  // Files are checked in parallel (each signature is self-contained and the
  // checker shares nothing mutable); output is emitted in argument order.
  std::vector<checked_file> results(files.size());
  if (files.size() == 1) {
    results[0] = check_one(files[0], memo_cap, machine, false);
  } else {
    std::vector<std::future<checked_file>> jobs;
    jobs.reserve(files.size());
    for (const std::string& f : files) {
      jobs.push_back(std::async(std::launch::async, check_one, f, memo_cap, machine, true));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
  }

  bool any_io_error = false;
  bool all_ok = true;
  for (const checked_file& r : results) {
    std::cout << r.out;
    std::cerr << r.err;
    any_io_error = any_io_error || r.io_error;
    all_ok = all_ok && r.ok;
  }
  if (any_io_error) return exit_usage;

  if (!expect_path.empty()) {
    std::optional<std::string> text = read_file_opt(expect_path);
    if (!text) {
      std::cerr << "error: cannot open '" << expect_path << "'\n";
      return exit_usage;
    }
    auto mismatches =
        colf::compare_expectations(*results[0].report, colf::parse_expectations(*text));
    for (const auto& m : mismatches) {
      std::cerr << "expectation mismatch: " << m << "\n";
    }
    return mismatches.empty() ? 0 : 1;
  }
  return all_ok ? 0 : 1;
}

int run_eq(const std::string& file, const std::string& c1, const std::string& c2,
           std::size_t memo_cap) {
  colf::driver_options opts;
  opts.check.equality.memo_cap = memo_cap;
  colf::file_report rep;
  try {
    rep = colf::check_file(file, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  colf::term_ptr lhs = colf::eta_expand_constant(rep.sig, c1);
  colf::term_ptr rhs = colf::eta_expand_constant(rep.sig, c2);
  if (!lhs || !rhs) {
    std::cerr << "error: '" << (lhs ? c2 : c1) << "' is not a declared constant\n";
    return 2;
  }
  colf::eq_options eopts;
  eopts.memo_cap = memo_cap;
  colf::eq_result r = colf::equal_terms(rep.sig, {}, *lhs, *rhs, eopts);
  const char* verdict = r.verdict == colf::eq_verdict::equal     ? "equal"
                        : r.verdict == colf::eq_verdict::unequal ? "unequal"
                                                                 : "error";
  std::cout << verdict << "\n";
  if (r.verdict == colf::eq_verdict::error || r.verdict == colf::eq_verdict::unequal) {
    if (!r.reason.empty()) std::cout << "reason\t" << r.reason << "\n";
  }
  std::cout << "max-assumptions\t" << r.max_assumptions << "\n";
  char bound[64];
  std::snprintf(bound, sizeof bound, "%.3f", colf::log10_equation_bound(rep.sig));
  std::cout << "log10-bound\t" << bound << "\n";
  return r.verdict == colf::eq_verdict::equal ? 0 : r.verdict == colf::eq_verdict::unequal ? 1 : 2;
}

int run_expand(const std::string& file, const std::string& c, int depth, std::size_t memo_cap) {
  colf::driver_options opts;
  opts.check.equality.memo_cap = memo_cap;
  colf::file_report rep;
  try {
    rep = colf::check_file(file, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  colf::term_ptr t = colf::eta_expand_constant(rep.sig, c);
  if (!t) {
    std::cerr << "error: '" << c << "' is not a declared constant\n";
    return 1;
  }
  try {
    colf::bohm_ptr b = colf::expand(rep.sig, *t, depth);
    std::cout << colf::print_bohm(*b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checker for signatures with circular definitions"};
  app.require_subcommand(1);

  std::size_t memo_cap = 10000;
  app.add_option("--memo-cap", memo_cap, "assumption-set size cap for equality (default 10000)");

  std::vector<std::string> check_files;
  std::string expect_path;
  bool machine = false;
  CLI::App* check = app.add_subcommand("check", "type-check signature files");
  check->add_option("files", check_files, "signature files")->required()->expected(-1);
  check->add_flag("--machine", machine, "stable tab-separated per-declaration report");
  check->add_option("--expect", expect_path, "compare verdicts against an expectation file");

  std::string eq_file, eq_c1, eq_c2;
  CLI::App* eq = app.add_subcommand("eq", "decide equality of two declared constants");
  eq->add_option("file", eq_file, "signature file")->required();
  eq->add_option("c1", eq_c1, "first constant")->required();
  eq->add_option("c2", eq_c2, "second constant")->required();

  std::string ex_file, ex_c;
  int depth = 12;
  CLI::App* ex = app.add_subcommand("expand", "print the depth-k unfolding of a constant");
  ex->add_option("file", ex_file, "signature file")->required();
  ex->add_option("constant", ex_c, "constant to unfold")->required();
  ex->add_option("--depth", depth, "unfolding depth (default 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  if (check->parsed()) return run_check(check_files, memo_cap, machine, expect_path);
  if (eq->parsed()) return run_eq(eq_file, eq_c1, eq_c2, memo_cap);
  if (ex->parsed()) return run_expand(ex_file, ex_c, depth, memo_cap);
  return exit_usage;
}
