#include <benchmark/benchmark.h>

#include "qdup/dim4.hpp"
#include "qdup/duplicates.hpp"

using namespace qdup;

namespace {

std::vector<FunctionalQuiver> set_maps(int n) {
  std::vector<FunctionalQuiver> out;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.emplace_back(t);
    int pos = n - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return out;
  }
}

// args: n, p
void BM_EnumerateColorations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Field f = Field::prime(state.range(1));
  TwoDim b(f.one(), f.zero());
  const auto maps = set_maps(n);
  std::size_t found = 0;
  for (auto _ : state)
    for (const auto& q : maps) found += enumerate_colorations(q, b).colorations.size();
  state.counters["set_maps"] = static_cast<double>(maps.size());
  benchmark::DoNotOptimize(found);
}
BENCHMARK(BM_EnumerateColorations)->Args({3, 3})->Args({4, 3})->Args({4, 5})->Args({5, 3});

void BM_BruteForcePairs(benchmark::State& state) {
  Field f = Field::prime(state.range(1));
  Algebra a = power_of_field(f, static_cast<std::size_t>(state.range(0)));
  TwoDim b(f.one(), f.zero());
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_pairs(a, b).size());
}
BENCHMARK(BM_BruteForcePairs)->Args({2, 3})->Args({3, 3})->Args({3, 5});

void BM_Catalog4(benchmark::State& state) {
  Field f = Field::prime(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(catalog4(f, {}, default_budgets(), jobs).rows.size());
}
BENCHMARK(BM_Catalog4)->Args({2, 1})->Args({3, 1})->Args({3, 4})->Args({5, 4})->Unit(benchmark::kMillisecond);

void BM_Fingerprint(benchmark::State& state) {
  Field f = Field::prime(state.range(0));
  Algebra a = direct_product(matrix_2x2(f), power_of_field(f, 2));
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint(a));
}
BENCHMARK(BM_Fingerprint)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
