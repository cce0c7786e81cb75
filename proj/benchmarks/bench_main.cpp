// Microbenchmarks for the three hot paths: whole-file checking, equality of
// circular definitions, and deep unfolding.

#include <benchmark/benchmark.h>

#include "colf/driver.hpp"
#include "colf/equality.hpp"
#include "colf/expansion.hpp"

namespace {

const char* const stream_sig = R"(
nat : type.
zero : nat.
succ : nat -> nat.
conat : cotype.
cozero : conat.
cosucc : conat -> conat.
w2 : conat = cosucc w3.
w3 : conat = cosucc w2.
padding : type.
pstream : cotype.
cocons : padding -> pstream -> pstream.
pad : padding -> padding.
next : pstream -> padding.
s1 : pstream = cocons (pad (next s1)) s1.
r1 : pstream = cocons (pad (pad (next r1))) (cocons (pad (next r1)) r1).
r2 : pstream = cocons (pad (pad (next r2))) r3.
r3 : pstream = cocons (pad (next r3)) r2.
)";

const char* const subtype_sig = R"(
tp : cotype.
top : tp.
arrow : tp -> tp -> tp.
sub : tp -> tp -> cotype.
sub/top : sub T top.
sub/arrow : sub S2 S1 -> sub T1 T2 -> sub (arrow S1 T1) (arrow S2 T2).
s : tp = arrow top s.
t : tp = arrow top (arrow top t).
s_sub_t : sub s t = sub/arrow sub/top (sub/arrow sub/top s_sub_t).
s_sub_t2 : sub s t = sub/arrow sub/top (sub/arrow sub/top s_sub_t2).
)";

void bench_check_file(benchmark::State& state) {
  for (auto _ : state) {
    colf::file_report rep = colf::check_text(stream_sig);
    benchmark::DoNotOptimize(rep.rows.data());
    if (!rep.ok()) state.SkipWithError("unexpected failure");
  }
}
BENCHMARK(bench_check_file);

void bench_equality_circular(benchmark::State& state) {
  colf::file_report rep = colf::check_text(subtype_sig);
  if (!rep.ok()) {
    state.SkipWithError("unexpected failure");
    return;
  }
  colf::term_ptr lhs = colf::eta_expand_constant(rep.sig, "s_sub_t");
  colf::term_ptr rhs = colf::eta_expand_constant(rep.sig, "s_sub_t2");
  for (auto _ : state) {
    colf::eq_result r = colf::equal_terms(rep.sig, {}, *lhs, *rhs);
    benchmark::DoNotOptimize(r.max_assumptions);
    if (r.verdict != colf::eq_verdict::equal) state.SkipWithError("expected equal");
  }
}
BENCHMARK(bench_equality_circular);

void bench_expand_deep(benchmark::State& state) {
  colf::file_report rep = colf::check_text(stream_sig);
  if (!rep.ok()) {
    state.SkipWithError("unexpected failure");
    return;
  }
  colf::term_ptr r1 = colf::eta_expand_constant(rep.sig, "r1");
  for (auto _ : state) {
    colf::bohm_ptr b = colf::expand(rep.sig, *r1, 20);
    benchmark::DoNotOptimize(b.get());
  }
}
BENCHMARK(bench_expand_deep);

}  // namespace

BENCHMARK_MAIN();
