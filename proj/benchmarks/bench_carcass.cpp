#include <benchmark/benchmark.h>

#include <random>

#include "carcass/carcass.hpp"
#include "carcass/oracle.hpp"
#include "carcass/queries.hpp"

namespace {

// Ring of doubled super-edges with pendant filler vertices; lambda = 4,
// skeleton gets one long cycle, every filler vertex is a stretched unit.
carcass::SteinerContext ring_instance(int terminals, int fillers_per_arc) {
  std::vector<carcass::EdgeBundle> edges;
  int n = terminals * (1 + fillers_per_arc);
  for (int i = 0; i < terminals; ++i) {
    int a = i * (1 + fillers_per_arc);
    int prev = a;
    for (int j = 0; j < fillers_per_arc; ++j) {
      int f = a + 1 + j;
      edges.push_back({prev, f, 2});
      prev = f;
    }
    edges.push_back({prev, ((i + 1) % terminals) * (1 + fillers_per_arc), 2});
  }
  std::vector<int> steiner;
  for (int i = 0; i < terminals; ++i) steiner.push_back(i * (1 + fillers_per_arc));
  return {carcass::MultiGraph(n, std::move(edges)), std::move(steiner), std::nullopt};
}

void BM_build_carcass(benchmark::State& state) {
  carcass::SteinerContext ctx = ring_instance(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    carcass::Carcass cc = carcass::build_carcass(ctx);
    benchmark::DoNotOptimize(cc.flesh.unit_count());
  }
}
BENCHMARK(BM_build_carcass)->Arg(5)->Arg(8)->Arg(11);

void BM_strip_for_minimal_cut(benchmark::State& state) {
  carcass::SteinerContext ctx = ring_instance(8, 3);
  carcass::Carcass cc = carcass::build_carcass(ctx);
  auto cuts = cc.skeleton.minimal_cuts();
  size_t i = 0;
  for (auto _ : state) {
    carcass::Strip s = carcass::strip_for_minimal_cut(cc, cuts[i++ % cuts.size()]);
    benchmark::DoNotOptimize(s.vertex_count());
  }
}
BENCHMARK(BM_strip_for_minimal_cut);

void BM_report_separating_mincut(benchmark::State& state) {
  carcass::SteinerContext ctx = ring_instance(8, 3);
  carcass::Carcass cc = carcass::build_carcass(ctx);
  int units = cc.flesh.unit_count();
  int x = 0;
  for (auto _ : state) {
    auto cut = carcass::report_separating_mincut(cc, x % units, (x * 7 + 1) % units);
    benchmark::DoNotOptimize(cut.has_value());
    ++x;
  }
}
BENCHMARK(BM_report_separating_mincut);

void BM_oracle_enumerate(benchmark::State& state) {
  std::mt19937 rng(5);
  carcass::SteinerContext ctx = ring_instance(4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    carcass::OracleReport rep = carcass::enumerate_all(ctx);
    benchmark::DoNotOptimize(rep.mincuts.size());
  }
}
BENCHMARK(BM_oracle_enumerate)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
