#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "itopo/error.hpp"
#include "itopo/evaluation.hpp"
#include "itopo/rng.hpp"

namespace itopo {

namespace {

// One sampling attempt; throws DegenerateSample when the component collapses
// below the every-router-degree->=3 rule.
NetworkGraph attempt(std::size_t n, double p, double frac, std::uint64_t seed) {
  Rng rng(seed);

  // Erdős–Rényi on router ids 1..n, pairs visited in a fixed order so the
  // draw sequence is part of the contract
  std::vector<std::vector<int>> adj(n + 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (rng.bernoulli(p)) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }

  // largest connected component, first one wins ties (ascending scan order)
  std::vector<int> comp_of(n + 1, -1);
  std::vector<int> best_comp;
  int comp_id = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    if (comp_of[s] != -1) continue;
    std::vector<int> comp{static_cast<int>(s)};
    comp_of[s] = comp_id;
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (int nb : adj[comp[q]])
        if (comp_of[nb] == -1) {
          comp_of[nb] = comp_id;
          comp.push_back(nb);
        }
    std::sort(comp.begin(), comp.end());
    if (comp.size() > best_comp.size()) best_comp = std::move(comp);
    ++comp_id;
  }

  const std::size_t m = best_comp.size();
  const std::size_t h =
      static_cast<std::size_t>(std::ceil(frac * static_cast<double>(m)));

  // h distinct routers, uniform without replacement
  std::vector<int> pool = best_comp;
  for (std::size_t i = 0; i < h; ++i) {
    std::size_t j = i + rng.uniform_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }

  NetworkGraph g;
  for (int u : best_comp) g.add_node(u, NodeKind::Underlay);
  for (int u : best_comp)
    for (int v : adj[u])
      if (u < v && !g.has_edge(u, v)) g.add_edge(u, v);
  int next_host = static_cast<int>(n) + 1;
  for (std::size_t i = 0; i < h; ++i) {
    g.add_node(next_host, NodeKind::Overlay);
    g.add_edge(next_host, pool[i]);
    ++next_host;
  }

  g = canonical_form(reduce_to_minimal(g));
  validate_network(g);
  for (int u : g.underlay_ids())
    if (g.neighbors(u).size() < 3)
      fail(Errc::DegenerateSample,
           "sample collapsed: router " + std::to_string(u) +
               " kept only " + std::to_string(g.neighbors(u).size()) +
               " neighbours");
  if (g.overlay_ids().size() < 2)
    fail(Errc::DegenerateSample, "sample collapsed: fewer than two hosts");
  return g;
}

}  // namespace

NetworkGraph generate_random_network(std::size_t n, const ExperimentConfig& cfg,
                                     std::uint64_t seed) {
  if (n < 4)
    fail(Errc::IndexMismatch,
         "random network needs n >= 4, got " + std::to_string(n));
  if (cfg.edge_prob < 0.0 || cfg.edge_prob > 1.0)
    fail(Errc::IndexMismatch, "edge_prob must lie in (0, 1]");
  if (cfg.overlay_fraction <= 0.0 || cfg.overlay_fraction > 1.0)
    fail(Errc::IndexMismatch, "overlay_fraction must lie in (0, 1]");
  const double p =
      cfg.edge_prob > 0.0 ? cfg.edge_prob : 2.0 / static_cast<double>(n);

  // bounded resampling on derived seeds; dense graphs almost never retry
  constexpr std::size_t kAttempts = 64;
  for (std::size_t t = 0; t < kAttempts; ++t) {
    std::uint64_t s = t == 0 ? seed : Rng::mix64(seed) + t;
    try {
      return attempt(n, p, cfg.overlay_fraction, s);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateSample || t + 1 == kAttempts) throw;
    }
  }
  fail(Errc::DegenerateSample, "unreachable");
}

}  // namespace itopo
