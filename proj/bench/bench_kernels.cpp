// Serial reference against the OpenMP kernels on large truncations of the
// two layered families. Pass --benchmark_filter to pick one kernel.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sagraph/families.hpp"
#include "sagraph/kernels.hpp"

namespace {

using namespace sagraph;

struct Fixture {
  GraphBundle bundle;
  std::vector<cplx> u;
  std::vector<cplx> out;
  std::vector<double> energies;
};

// Triangular rows grow like sqrt(j), bipartite rows like j, so these row
// counts give roughly 10^4 to 2 x 10^6 vertices.
Fixture& fixture(int family, int rows) {
  static std::vector<std::pair<std::pair<int, int>, Fixture>> cache;
  for (auto& [key, f] : cache)
    if (key == std::pair{family, rows}) return f;
  Fixture f;
  f.bundle = generate(family == 0 ? LayeredFamilySpec::triangular(1.0, 0.5) : LayeredFamilySpec::bipartite(), rows);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  f.u.resize(f.bundle.size());
  for (auto& z : f.u) z = {n(rng), n(rng)};
  f.out.resize(f.bundle.size());
  f.energies.resize(f.bundle.graph.edge_count());
  cache.emplace_back(std::pair{family, rows}, std::move(f));
  return cache.back().second;
}

template <auto Kernel>
void vertex_kernel(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    Kernel(f.bundle, f.u, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.counters["vertices"] = static_cast<double>(f.bundle.size());
  state.counters["edges"] = static_cast<double>(f.bundle.graph.edge_count());
}

template <auto Kernel>
void edge_kernel(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    Kernel(f.bundle, f.u, {}, f.energies);
    benchmark::DoNotOptimize(f.energies.data());
  }
  state.counters["edges"] = static_cast<double>(f.bundle.graph.edge_count());
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({0, 2000})->Args({0, 20000})->Args({1, 150})->Args({1, 300});
  b->Unit(benchmark::kMicrosecond)->UseRealTime();
}

}  // namespace

BENCHMARK(vertex_kernel<kernels::apply_serial>)->Name("apply/serial")->Apply(sizes);
BENCHMARK(vertex_kernel<kernels::apply_parallel>)->Name("apply/parallel")->Apply(sizes);
BENCHMARK(vertex_kernel<kernels::symmetrized_apply_serial>)->Name("symmetrized_apply/serial")->Apply(sizes);
BENCHMARK(vertex_kernel<kernels::symmetrized_apply_parallel>)->Name("symmetrized_apply/parallel")->Apply(sizes);
BENCHMARK(edge_kernel<kernels::edge_energies_serial>)->Name("edge_energies/serial")->Apply(sizes);
BENCHMARK(edge_kernel<kernels::edge_energies_parallel>)->Name("edge_energies/parallel")->Apply(sizes);

BENCHMARK_MAIN();
