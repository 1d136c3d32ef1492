// Valuation-scan kernel: serial vs OpenMP, with the naive reference
// evaluator as the baseline.  The query is a tautology over n atoms, so
// every run scans all 2^n rows.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "fibring/eval.hpp"
#include "fibring/reference.hpp"

namespace {

using namespace fibring;

BooleanMatrix bench_matrix() {
  return builtin_matrix({"and", "or", "neg", "xor"});
}

// or(p1, ..., pn, neg(p1)): true in every row, touching n variables.
Formula wide_tautology(const BooleanMatrix& m, unsigned vars) {
  const Connective& disj = *m.signature().find("or");
  const Connective& inv = *m.signature().find("neg");
  Formula f = Formula::application(inv, {Formula::variable("p1")});
  for (unsigned i = vars; i >= 1; --i) {
    f = Formula::application(
        disj, {Formula::variable("p" + std::to_string(i)), f});
  }
  return f;
}

void BM_scan_serial(benchmark::State& state) {
  const BooleanMatrix m = bench_matrix();
  const CompiledQuery q = compile_query(
      m, {}, {wide_tautology(m, static_cast<unsigned>(state.range(0)))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_witness_row_serial(q));
  }
  state.SetItemsProcessed(state.iterations() * (1ll << state.range(0)));
}

void BM_scan_parallel(benchmark::State& state) {
  const BooleanMatrix m = bench_matrix();
  const CompiledQuery q = compile_query(
      m, {}, {wide_tautology(m, static_cast<unsigned>(state.range(0)))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_witness_row_parallel(q));
  }
  state.SetItemsProcessed(state.iterations() * (1ll << state.range(0)));
}

void BM_scan_reference(benchmark::State& state) {
  const BooleanMatrix m = bench_matrix();
  const Formula goal =
      wide_tautology(m, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ref::entails(m, {}, goal));
  }
  state.SetItemsProcessed(state.iterations() * (1ll << state.range(0)));
}

BENCHMARK(BM_scan_serial)->Arg(14)->Arg(18)->Arg(20)->Arg(22);
BENCHMARK(BM_scan_parallel)->Arg(14)->Arg(18)->Arg(20)->Arg(22);
BENCHMARK(BM_scan_reference)->Arg(14)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
