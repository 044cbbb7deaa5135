#include <benchmark/benchmark.h>

#include "latdesign/catalog.hpp"
#include "latdesign/design.hpp"
#include "latdesign/parallel.hpp"
#include "latdesign/shells.hpp"

using namespace latdesign;

// Arg 0: worker count, with 0 selecting the serial recursive reference.
static void BM_EnumerateShell(benchmark::State& state, const char* name, int norm) {
  const Lattice& l = catalog::build(name);
  EnumerationOptions opts;
  opts.use_serial_reference = state.range(0) == 0;
  opts.workers = state.range(0) == 0 ? 1 : static_cast<int>(state.range(0));
  std::size_t n = 0;
  for (auto _ : state) {
    n = enumerate_shell(l, Rat(norm), opts).size();
    benchmark::DoNotOptimize(n);
  }
  state.counters["vectors"] = static_cast<double>(n);
}

static void BM_TensorCheck(benchmark::State& state, const char* name, int norm, unsigned degree) {
  const ShellSet x = enumerate_shell(catalog::build(name), Rat(norm));
  for (auto _ : state) benchmark::DoNotOptimize(tensor_check(x, degree, static_cast<int>(state.range(0))).holds);
  state.counters["vectors"] = static_cast<double>(x.size());
}

static void BM_Screen(benchmark::State& state, const char* name, int norm, unsigned degree) {
  const ShellSet x = enumerate_shell(catalog::build(name), Rat(norm));
  for (auto _ : state)
    benchmark::DoNotOptimize(screen_check(x, degree, 50, 1, static_cast<int>(state.range(0))).holds);
}

static void worker_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int w = 1; w <= std::max(2, default_workers()); w *= 2) b->Arg(w);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

static void thread_args(benchmark::internal::Benchmark* b) {
  for (int w = 1; w <= std::max(2, default_workers()); w *= 2) b->Arg(w);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK_CAPTURE(BM_EnumerateShell, L1623_s4, "L1623", 4)->Apply(worker_args);
BENCHMARK_CAPTURE(BM_EnumerateShell, O23_s4, "O23", 4)->Apply(worker_args);
BENCHMARK_CAPTURE(BM_TensorCheck, O23_s3_deg6, "O23", 3, 6)->Apply(thread_args);
BENCHMARK_CAPTURE(BM_TensorCheck, L1622_s4_deg4, "L1622", 4, 4)->Apply(thread_args);
BENCHMARK_CAPTURE(BM_Screen, O22_s4_deg6, "O22", 4, 6)->Apply(thread_args);

BENCHMARK_MAIN();
