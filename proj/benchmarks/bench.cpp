#include <benchmark/benchmark.h>

#include <string>

#include "kgc/graphs.hpp"
#include "kgc/product_system.hpp"
#include "kgc/random.hpp"

namespace {

using namespace kgc;

DirectedGraph rose(const std::string& prefix, std::size_t count) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < count; ++i) edges.push_back({prefix + std::to_string(i), 0, 0});
  return DirectedGraph(1, std::move(edges));
}

Skeleton rose_skeleton(std::size_t a, std::size_t b) {
  const DirectedGraph e = rose("e", a), f = rose("f", b);
  return skeleton_from_kgraph(KGraphPresentation({e, f}, {enumerate_squares(e, f, 1).squares[0]}));
}

void BM_StructureMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Skeleton s = rose_skeleton(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(structure_map(s, {n, n}, {n, n}));
}
BENCHMARK(BM_StructureMap)->DenseRange(1, 2);

void BM_IsoSearch(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Skeleton s = rose_skeleton(d, d);
  Rng rng(1);
  std::vector<CorrMorphism> thetas;
  for (const Correspondence& y : s.fibers())
    thetas.push_back(CorrMorphism(y, y, {haar_unitary(d, rng)}));
  const Skeleton c = conjugate(s, thetas);
  for (auto _ : state) benchmark::DoNotOptimize(skeleton_iso_search(s, c));
}
BENCHMARK(BM_IsoSearch)->DenseRange(1, 3);

void BM_EnumerateSquares(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DirectedGraph e = rose("e", n), f = rose("f", 2);
  for (auto _ : state) {
    SquareEnumerator en(e, f);
    std::size_t count = 0;
    while (en.next()) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateSquares)->DenseRange(1, 4);

}  // namespace
BENCHMARK_MAIN();
