#include <benchmark/benchmark.h>

#include <random>

#include "tempest/engine.hpp"
#include "tempest/graph.hpp"
#include "tempest/plan.hpp"
#include "tempest/runtime.hpp"

namespace {

using namespace tempest;

TemporalGraph random_graph(std::size_t n_vertices, std::size_t n_edges, double hot_fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> vertex(1, static_cast<VertexId>(n_vertices - 1));
  std::bernoulli_distribution hot(hot_fraction);
  std::vector<TemporalEdge> edges;
  edges.reserve(n_edges);
  Timestamp t = 0;
  for (std::size_t i = 0; i < n_edges; ++i) {
    t += rng() % 4;
    VertexId a = vertex(rng);
    VertexId b = vertex(rng);
    while (b == a) b = vertex(rng);
    if (hot(rng)) (rng() % 2 ? a : b) = 0;
    edges.push_back({a, b, t, 0});
  }
  return TemporalGraph::from_edges(std::move(edges), n_vertices);
}

MotifQuery motif(std::vector<std::pair<MotifVertex, MotifVertex>> pairs, Duration delta) {
  MotifQuery q;
  for (std::uint32_t i = 0; i < pairs.size(); ++i) q.edges.push_back({pairs[i].first, pairs[i].second, i, {}});
  q.cg_delta = delta;
  return q;
}

const std::vector<std::pair<const char*, std::vector<std::pair<MotifVertex, MotifVertex>>>>& shapes() {
  static const std::vector<std::pair<const char*, std::vector<std::pair<MotifVertex, MotifVertex>>>> s = {
      {"3-path", {{0, 1}, {1, 2}, {2, 3}}},
      {"triangle", {{0, 1}, {1, 2}, {2, 0}}},
      {"tailed-triangle", {{0, 1}, {1, 2}, {2, 0}, {2, 3}}},
      {"4-cycle", {{0, 1}, {1, 2}, {2, 3}, {3, 0}}},
      {"diamond", {{0, 1}, {0, 2}, {1, 3}, {2, 3}}},
      {"5-edge", {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 1}}},
  };
  return s;
}

void BM_Engine(benchmark::State& state) {
  static const TemporalGraph g = random_graph(500, 100'000, 0.0, 1);
  const auto& [name, pairs] = shapes()[state.range(0)];
  const MiningPlan plan = compile_plan(motif(pairs, 400));
  state.SetLabel(name);
  MatchStats total;
  for (auto _ : state) {
    MatchStats stats;
    std::uint64_t n = 0;
    SearchContext ctx = SearchContext::for_roots(g, {0, static_cast<EdgeIndex>(g.num_edges())});
    run(ctx, g, plan, [&](std::span<const EdgeIndex>) { ++n; }, stats);
    benchmark::DoNotOptimize(n);
    total += stats;
  }
  state.counters["iterations/s"] = benchmark::Counter(static_cast<double>(total.iterations), benchmark::Counter::kIsRate);
  state.counters["bsearch/iter"] =
      static_cast<double>(total.binary_searches) / static_cast<double>(std::max<std::uint64_t>(1, total.iterations));
}
BENCHMARK(BM_Engine)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_BinarySearch(benchmark::State& state) {
  static const TemporalGraph g = random_graph(50, 1'000'000, 0.0, 2);
  std::mt19937_64 rng(3);
  const Timestamp last = g.time(static_cast<EdgeIndex>(g.num_edges() - 1));
  for (auto _ : state) {
    const auto v = static_cast<VertexId>(rng() % g.num_vertices());
    benchmark::DoNotOptimize(upper_bound_within(g, EdgeList(g.out_edges(v)), rng() % last));
  }
}
BENCHMARK(BM_BinarySearch);

void BM_Runtime(benchmark::State& state) {
  static const TemporalGraph g = random_graph(300, 200'000, 0.5, 4);
  const MiningPlan plan = compile_plan(motif({{0, 1}, {0, 2}, {0, 3}}, 60));
  SchedulerConfig cfg;
  cfg.workers = static_cast<unsigned>(state.range(0));
  cfg.steal = state.range(1) != 0;
  cfg.redistribute = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_plan(g, plan, cfg).count);
}
BENCHMARK(BM_Runtime)->ArgsProduct({{1, 2, 4, 8}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
