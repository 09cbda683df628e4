// Serial reference kernels against their OpenMP counterparts, on the scans
// the library actually runs: left bilinearity of a deviation table and the
// fill of a deviation table.

#include <benchmark/benchmark.h>

#include "quadgroup/kernels.hpp"
#include "quadgroup/quadmaps.hpp"

using namespace qg;

namespace {

const FiniteGroup& group_for(std::int64_t which) {
  static const FiniteGroup d8 = builtin::dihedral(8);
  static const FiniteGroup heis = builtin::heisenberg(3);
  static const FiniteGroup heis5 = builtin::heisenberg(5);
  return which == 0 ? d8 : which == 1 ? heis : heis5;
}

// Squaring on a class-2 group is quadratic, so the scan runs to the end.
template <bool Parallel>
void left_bilinearity_scan(benchmark::State& state) {
  const FiniteGroup& g = group_for(state.range(0));
  const GroupFunction f = GroupFunction::power_map(g, 2);
  const DeviationTable d(f);
  const FiniteGroup& h = f.codomain();
  const std::uint64_t n = g.size();
  auto fails = [&](std::uint64_t i) {
    const Elem a = static_cast<Elem>(i / (n * n)), a2 = static_cast<Elem>(i / n % n), b = static_cast<Elem>(i % n);
    return d(g.mul(a, a2), b) != h.mul(d(a, b), d(a2, b));
  };
  for (auto _ : state) {
    const std::uint64_t r =
        Parallel ? kernels::first_failure(n * n * n, fails) : kernels::serial::first_failure(n * n * n, fails);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n * n));
  state.counters["threads"] = Parallel ? kernels::worker_count() : 1;
}

template <bool Parallel>
void deviation_fill(benchmark::State& state) {
  const FiniteGroup& g = group_for(state.range(0));
  const GroupFunction f = GroupFunction::power_map(g, 2);
  const std::uint64_t n = g.size();
  std::vector<Elem> out(n * n);
  auto fill = [&](std::uint64_t i) { out[i] = f.deviation(static_cast<Elem>(i / n), static_cast<Elem>(i % n)); };
  for (auto _ : state) {
    if (Parallel)
      kernels::for_each(n * n, fill);
    else
      kernels::serial::for_each(n * n, fill);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}

}  // namespace

BENCHMARK(left_bilinearity_scan<false>)->Name("bilinearity/serial")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(left_bilinearity_scan<true>)->Name("bilinearity/openmp")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(deviation_fill<false>)->Name("deviation_fill/serial")->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(deviation_fill<true>)->Name("deviation_fill/openmp")->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
