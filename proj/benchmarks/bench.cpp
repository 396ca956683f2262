#include <benchmark/benchmark.h>

#include "gcode/binary_code.hpp"
#include "gcode/blockers.hpp"
#include "gcode/factorization.hpp"
#include "gcode/grid.hpp"
#include "gcode/pattern.hpp"
#include "gcode/tree_code.hpp"

using namespace gcode;

static void BM_SymdiffConnectivity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LabeledGraph a = random_graph(n, 0.5, 1);
  const LabeledGraph b = random_graph(n, 0.5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_spanning_connected(symdiff(a, b)));
  }
}
BENCHMARK(BM_SymdiffConnectivity)->Arg(16)->Arg(64)->Arg(256);

static void BM_KotzigVerify(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const OneFactorization f = kotzig_p1f(p);
    benchmark::DoNotOptimize(f.factors.size());
  }
}
BENCHMARK(BM_KotzigVerify)->Arg(13)->Arg(37)->Arg(61);

static void BM_GvGreedy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const GvResult r = gv_greedy(m, 4);
    benchmark::DoNotOptimize(r.code.words.size());
  }
}
BENCHMARK(BM_GvGreedy)->Arg(12)->Arg(16)->Arg(18);

static void BM_CountTriangles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LabeledGraph g = random_graph(n, 0.5, 3);
  const PatternGraph k3(complete_graph(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_copies(g, k3));
  }
}
BENCHMARK(BM_CountTriangles)->Arg(12)->Arg(24);

static void BM_TreecodePairCertificate(benchmark::State& state) {
  const TreeCodeParams params = build_treecode(37, 3, kotzig_p1f(37));
  std::uint64_t i = 0;
  for (auto _ : state) {
    const PairCertificate cert = verify_pair(params, i, i + 1 + (i % 1000));
    benchmark::DoNotOptimize(cert.tree.edge_count());
    i = (i + 7) % (params.family_size() - 2000);
  }
}
BENCHMARK(BM_TreecodePairCertificate);

static void BM_GridScore(benchmark::State& state) {
  for (auto _ : state) {
    const auto family = search_grid_family(GridSpec{3, 3}, 2, 42);
    benchmark::DoNotOptimize(family.has_value());
  }
}
BENCHMARK(BM_GridScore);

BENCHMARK_MAIN();
