#include <benchmark/benchmark.h>

#include <array>

#include "vjoin/distance.hpp"
#include "vjoin/graph_build.hpp"
#include "vjoin/join.hpp"
#include "vjoin/single_query.hpp"
#include "vjoin/workload.hpp"

namespace {

using namespace vjoin;

Workload make_workload(std::size_t dim, std::size_t data, std::size_t queries) {
  WorkloadSpec s;
  s.dim = dim;
  s.data_count = data;
  s.query_count = queries;
  s.cluster_count = 4;
  return generate(s);
}

void BM_L2Distance(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const Workload w = make_workload(dim, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2_distance(w.data[0], w.data[1]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_L2Distance)->Arg(4)->Arg(16)->Arg(128)->Arg(960);

void BM_BuildIndex(benchmark::State& state) {
  const Workload w = make_workload(16, static_cast<std::size_t>(state.range(0)), 1);
  IndexBuildParams p;
  p.k_nn = 32;
  p.max_degree = 24;
  p.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_index(w.data, p));
  }
}
BENCHMARK(BM_BuildIndex)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_SingleQuery(benchmark::State& state) {
  static const Workload w = make_workload(16, 5000, 200);
  static const ProximityGraph g = build_index(w.data, {});
  QuerySearcher searcher(g, NodeVectors(w.data));
  SearchParams params;
  params.theta = static_cast<float>(state.range(0)) / 100.0f;
  params.max_queue = 64;
  params.es_patience = 10;
  const std::array<VectorId, 1> seeds{g.entry_point};
  VectorId q = 0;
  for (auto _ : state) {
    Counters c;
    benchmark::DoNotOptimize(searcher.join_single_query(w.queries[q], seeds, params, c));
    q = (q + 1) % static_cast<VectorId>(w.queries.size());
  }
}
BENCHMARK(BM_SingleQuery)->Arg(10)->Arg(50)->Arg(100);

void BM_Join(benchmark::State& state) {
  static const Workload w = make_workload(16, 5000, 200);
  static const ProximityGraph data_graph = build_index(w.data, {});
  static const ProximityGraph query_graph = build_index(w.queries, {});
  static const ProximityGraph merged = build_merged_index(w.queries, w.data, {});
  JoinConfig cfg;
  cfg.variant = static_cast<MethodVariant>(state.range(0));
  cfg.theta = 0.5f;
  state.SetLabel(std::string(to_string(cfg.variant)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vector_join(w.queries, w.data, {&data_graph, &query_graph, &merged}, cfg));
  }
}
BENCHMARK(BM_Join)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
