#include <benchmark/benchmark.h>

#include "itopo/bounds.hpp"
#include "itopo/evaluation.hpp"
#include "itopo/ilp.hpp"
#include "itopo/interference.hpp"
#include "itopo/recovery.hpp"

namespace {

using namespace itopo;

// k hosts around a router cycle, hosts 1..k, routers k+1..2k
NetworkGraph ring(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    edges.push_back({i + 1, k + 1 + i});
    edges.push_back({k + 1 + i, k + 1 + (i + 1) % k});
  }
  std::vector<int> hosts(k);
  for (int i = 0; i < k; ++i) hosts[i] = i + 1;
  return build_network(edges, hosts);
}

// complete binary router tree of the given depth with two hosts per leaf
// router and one per inner spine, every router degree >= 3
NetworkGraph bushy_tree(int leaves) {
  std::vector<std::pair<int, int>> edges;
  int next_router = 2 * leaves + 1;
  std::vector<int> hosts;
  // a router spine, each spine node holding two hosts
  int prev = 0;
  for (int i = 0; i < leaves; ++i) {
    int r = next_router++;
    edges.push_back({2 * i + 1, r});
    edges.push_back({2 * i + 2, r});
    hosts.push_back(2 * i + 1);
    hosts.push_back(2 * i + 2);
    if (prev) edges.push_back({prev, r});
    prev = r;
  }
  return build_network(edges, hosts);
}

void BM_InterferenceRing(benchmark::State& state) {
  NetworkGraph g = ring(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(interference_from_topology(g));
}
BENCHMARK(BM_InterferenceRing)->Arg(6)->Arg(10)->Arg(16);

void BM_InterferenceTree(benchmark::State& state) {
  NetworkGraph g = bushy_tree(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(interference_from_topology(g));
}
BENCHMARK(BM_InterferenceTree)->Arg(3)->Arg(5)->Arg(8);

void BM_IdentifyTree(benchmark::State& state) {
  NetworkGraph g = bushy_tree(static_cast<int>(state.range(0)));
  InterferenceMatrix f = interference_from_topology(g);
  std::vector<int> hosts = g.overlay_ids();
  for (auto _ : state) benchmark::DoNotOptimize(identify_tree(f, hosts));
}
BENCHMARK(BM_IdentifyTree)->Arg(3)->Arg(5)->Arg(8);

void BM_IdentifyRing(benchmark::State& state) {
  NetworkGraph g = ring(static_cast<int>(state.range(0)));
  InterferenceMatrix f = interference_from_topology(g);
  std::vector<int> hosts = g.overlay_ids();
  for (auto _ : state) benchmark::DoNotOptimize(identify_ring(f, hosts));
}
BENCHMARK(BM_IdentifyRing)->Arg(5)->Arg(9)->Arg(15);

void BM_IdentifyGeneral(benchmark::State& state) {
  NetworkGraph g = ring(static_cast<int>(state.range(0)));
  InterferenceMatrix f = interference_from_topology(g);
  std::vector<int> hosts = g.overlay_ids();
  for (auto _ : state) benchmark::DoNotOptimize(identify_general(f, hosts));
}
BENCHMARK(BM_IdentifyGeneral)->Arg(5)->Arg(8)->Arg(11);

void BM_CoverGreedy(benchmark::State& state) {
  NetworkGraph g = bushy_tree(static_cast<int>(state.range(0)));
  InterferenceGraph ig =
      build_interference_graph(interference_from_topology(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(min_edge_clique_cover(ig, CoverMode::Greedy));
}
BENCHMARK(BM_CoverGreedy)->Arg(3)->Arg(5)->Arg(8);

void BM_CoverExact(benchmark::State& state) {
  NetworkGraph g = bushy_tree(static_cast<int>(state.range(0)));
  InterferenceGraph ig =
      build_interference_graph(interference_from_topology(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        min_edge_clique_cover(ig, CoverMode::Exact, 1000000));
}
BENCHMARK(BM_CoverExact)->Arg(3)->Arg(5)->Arg(8);

void BM_EditDistanceExact(benchmark::State& state) {
  NetworkGraph a = bushy_tree(3);
  NetworkGraph b = ring(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(edit_distance(a, b, DistanceMode::Exact));
}
BENCHMARK(BM_EditDistanceExact);

void BM_EditDistanceHeuristic(benchmark::State& state) {
  NetworkGraph a = bushy_tree(8);
  NetworkGraph b = ring(10);
  for (auto _ : state)
    benchmark::DoNotOptimize(edit_distance(a, b, DistanceMode::Heuristic));
}
BENCHMARK(BM_EditDistanceHeuristic);

void BM_IlpSolve(benchmark::State& state) {
  NetworkGraph g = ring(4);
  InterferenceMatrix f = interference_from_topology(g);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_small(f, 8));
}
BENCHMARK(BM_IlpSolve);

}  // namespace

BENCHMARK_MAIN();
