#include "colf/driver.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include "colf/elaborate.hpp"
#include "colf/parser.hpp"

namespace colf {

bool file_report::ok() const {
  if (!diagnostics.empty()) return false;
  for (const auto& r : rows) {
    if (r.v != verdict::ok) return false;
  }
  return true;
}

file_report check_text(std::string_view text, const driver_options& opts) {
  file_report rep;
  parse_result parsed = parse_signature(text);
  elab_options eopts;
  eopts.equality = opts.check.equality;
  elab_result elaborated = elaborate(parsed.decls, eopts);
  check_result checked = check_signature(elaborated.sig, opts.check);

  rep.rows.reserve(parsed.decls.size());
  for (std::size_t i = 0; i < parsed.decls.size(); ++i) {
    const surface_decl& sd = parsed.decls[i];
    verdict v = elaborated.verdicts[i].v;
    if (v == verdict::ok) v = checked.verdict_for(sd.name);
    rep.rows.push_back({sd.name, v, sd.span});
  }
  rep.diagnostics = parsed.errors;
  rep.diagnostics.insert(rep.diagnostics.end(), elaborated.diagnostics.begin(),
                         elaborated.diagnostics.end());
  rep.diagnostics.insert(rep.diagnostics.end(), checked.diagnostics.begin(),
                         checked.diagnostics.end());
  rep.sig = std::move(elaborated.sig);
  rep.max_assumptions = std::max(elaborated.max_assumptions, checked.max_assumptions);
  return rep;
}

file_report check_file(const std::string& path, const driver_options& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return check_text(buf.str(), opts);
}

std::string machine_report(const file_report& rep) {
  std::string out;
  for (const auto& d : rep.diagnostics) {
    if (d.category == verdict::parse_error) {
      out += "-\tparse-error\t" + to_string(d.span) + "\n";
    }
  }
  for (const auto& r : rep.rows) {
    out += r.name + "\t" + verdict_name(r.v) + "\t" + to_string(r.span) + "\n";
  }
  return out;
}

std::vector<expect_entry> parse_expectations(std::string_view text) {
  std::vector<expect_entry> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    out.push_back({std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))});
  }
  return out;
}

std::vector<std::string> compare_expectations(const file_report& rep,
                                              const std::vector<expect_entry>& expected) {
  std::vector<std::string> mismatches;
  if (rep.rows.size() != expected.size()) {
    mismatches.push_back("expected " + std::to_string(expected.size()) + " declarations, found " +
                         std::to_string(rep.rows.size()));
  }
  std::size_t n = std::min(rep.rows.size(), expected.size());
  for (std::size_t i = 0; i < n; ++i) {
    const decl_row& r = rep.rows[i];
    const expect_entry& e = expected[i];
    if (r.name != e.name) {
      mismatches.push_back("declaration " + std::to_string(i + 1) + ": expected '" + e.name +
                           "', found '" + r.name + "'");
      continue;
    }
    if (verdict_name(r.v) != e.verdict_str) {
      mismatches.push_back("'" + r.name + "': expected " + e.verdict_str + ", found " +
                           verdict_name(r.v));
    }
  }
  return mismatches;
}

namespace {

term_ptr eta_expand_var(const std::string& v, const ctype& a) {
  neutral n;
  n.h = head{head_kind::variable, v};
  std::vector<std::string> binders;
  const ctype* cur = &a;
  term_ptr out;
  std::vector<const pi_type*> pis;
  while (const auto* p = std::get_if<pi_type>(cur)) {
    pis.push_back(p);
    cur = p->codomain.get();
  }
  for (const auto* p : pis) {
    std::string b = p->var == v ? p->var + "'" : p->var;
    binders.push_back(b);
    if (p->prepat) {
      n.args.push_back(pat_arg(b));
    } else {
      n.args.push_back(term_arg(eta_expand_var(b, *p->domain)));
    }
  }
  out = make_neutral(std::move(n));
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
    out = make_lam(*it, out);
  }
  return out;
}

}  // namespace

term_ptr eta_expand_constant(const signature& sig, const std::string& name) {
  const decl* d = sig.find(name);
  if (d == nullptr || d->tag == decl_kind::family || !d->type) return nullptr;
  neutral n;
  n.h = head{d->tag == decl_kind::definition ? head_kind::recdef : head_kind::constant, name};
  std::vector<std::string> binders;
  const ctype* cur = d->type.get();
  while (const auto* p = std::get_if<pi_type>(cur)) {
    binders.push_back(p->var);
    if (p->prepat) {
      n.args.push_back(pat_arg(p->var));
    } else {
      n.args.push_back(term_arg(eta_expand_var(p->var, *p->domain)));
    }
    cur = p->codomain.get();
  }
  term_ptr out = make_neutral(std::move(n));
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
    out = make_lam(*it, out);
  }
  return mark_renaming_lams(*out);
}

}  // namespace colf
