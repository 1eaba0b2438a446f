#include <algorithm>
#include <cstdlib>
#include <map>
#include <vector>

#include "itopo/error.hpp"
#include "itopo/evaluation.hpp"

namespace itopo {

namespace {

// Compact view: nodes 0..n-1 with kinds, adjacency as a dense matrix.  Small
// graphs only, so the quadratic footprint is irrelevant.
struct Flat {
  std::vector<NodeKind> kind;
  std::vector<int> degree;
  std::vector<char> adj;  // n*n
  std::size_t n = 0;
  std::size_t n_edges = 0;

  bool at(std::size_t a, std::size_t b) const { return adj[a * n + b]; }
};

Flat flatten(const NetworkGraph& g) {
  Flat f;
  std::vector<int> ids = g.node_ids();
  f.n = ids.size();
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  f.kind.resize(f.n);
  f.degree.assign(f.n, 0);
  f.adj.assign(f.n * f.n, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) f.kind[i] = g.kind(ids[i]);
  for (auto [a, b] : g.edges()) {
    std::size_t i = index[a], j = index[b];
    f.adj[i * f.n + j] = f.adj[j * f.n + i] = 1;
    ++f.degree[i];
    ++f.degree[j];
    ++f.n_edges;
  }
  return f;
}

// map1[i] = image of g1 node i in g2, or -1 for "matched with padding"
std::size_t mapping_cost(const Flat& a, const Flat& b,
                         const std::vector<int>& map1) {
  std::size_t matched = 0;
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = i + 1; j < a.n; ++j)
      if (a.at(i, j) && map1[i] >= 0 && map1[j] >= 0 &&
          b.at(static_cast<std::size_t>(map1[i]),
               static_cast<std::size_t>(map1[j])))
        ++matched;
  return a.n_edges + b.n_edges - 2 * matched;
}

// greedy profile matching: within each kind, pair off nodes in order of
// (degree, neighbour degrees) and leave the surplus unmatched
std::vector<int> profile_greedy(const Flat& a, const Flat& b) {
  auto profile_order = [](const Flat& f) {
    std::vector<std::vector<int>> nbr_deg(f.n);
    for (std::size_t i = 0; i < f.n; ++i) {
      for (std::size_t j = 0; j < f.n; ++j)
        if (f.at(i, j)) nbr_deg[i].push_back(f.degree[j]);
      std::sort(nbr_deg[i].rbegin(), nbr_deg[i].rend());
    }
    std::vector<std::size_t> order(f.n);
    for (std::size_t i = 0; i < f.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (f.degree[x] != f.degree[y]) return f.degree[x] > f.degree[y];
      if (nbr_deg[x] != nbr_deg[y]) return nbr_deg[x] > nbr_deg[y];
      return x < y;
    });
    return order;
  };
  std::vector<std::size_t> oa = profile_order(a), ob = profile_order(b);
  std::vector<int> map1(a.n, -1);
  for (NodeKind kind : {NodeKind::Overlay, NodeKind::Underlay}) {
    std::vector<std::size_t> la, lb;
    for (std::size_t i : oa)
      if (a.kind[i] == kind) la.push_back(i);
    for (std::size_t j : ob)
      if (b.kind[j] == kind) lb.push_back(j);
    for (std::size_t t = 0; t < std::min(la.size(), lb.size()); ++t)
      map1[la[t]] = static_cast<int>(lb[t]);
  }
  return map1;
}

// hill climbing over image swaps and moves to unused targets
void refine(const Flat& a, const Flat& b, std::vector<int>& map1) {
  // matched edges at node i under the current mapping
  auto local = [&](std::size_t i) {
    if (map1[i] < 0) return std::size_t{0};
    std::size_t m = 0;
    for (std::size_t j = 0; j < a.n; ++j)
      if (a.at(i, j) && map1[j] >= 0 &&
          b.at(static_cast<std::size_t>(map1[i]),
               static_cast<std::size_t>(map1[j])))
        ++m;
    return m;
  };
  auto pair_score = [&](std::size_t i, std::size_t j) {
    // edge (i, j) would be double counted by local(i) + local(j)
    std::size_t s = local(i) + local(j);
    if (a.at(i, j) && map1[i] >= 0 && map1[j] >= 0 &&
        b.at(static_cast<std::size_t>(map1[i]),
             static_cast<std::size_t>(map1[j])))
      --s;
    return s;
  };

  std::vector<char> used(b.n, 0);
  for (int m : map1)
    if (m >= 0) used[static_cast<std::size_t>(m)] = 1;

  for (int pass = 0; pass < 20; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < a.n; ++i) {
      // swap images with another node of the same kind
      for (std::size_t j = i + 1; j < a.n; ++j) {
        if (a.kind[i] != a.kind[j]) continue;
        if (map1[i] < 0 && map1[j] < 0) continue;
        std::size_t before = pair_score(i, j);
        std::swap(map1[i], map1[j]);
        std::size_t after = pair_score(i, j);
        if (after > before)
          improved = true;
        else
          std::swap(map1[i], map1[j]);
      }
      // move to a spare same-kind target
      for (std::size_t u = 0; u < b.n; ++u) {
        if (used[u] || b.kind[u] != a.kind[i]) continue;
        std::size_t before = local(i);
        int old = map1[i];
        map1[i] = static_cast<int>(u);
        std::size_t after = local(i);
        if (after > before) {
          used[u] = 1;
          if (old >= 0) used[static_cast<std::size_t>(old)] = 0;
          improved = true;
        } else {
          map1[i] = old;
        }
      }
    }
    if (!improved) break;
  }
}

std::size_t heuristic_distance(const Flat& a, const Flat& b) {
  std::vector<int> map1 = profile_greedy(a, b);
  refine(a, b, map1);
  return mapping_cost(a, b, map1);
}

// Exact search: maximize the number of matched edges over injective
// kind-respecting partial maps; unmapped nodes stand for padding.  Every
// edge of either graph dies exactly once (an endpoint goes unmapped, or both
// images are fixed without being adjacent), which keeps the remaining-match
// bound cheap and admissible.
struct ExactSearch {
  const Flat& a;
  const Flat& b;
  std::vector<int> map1;        // -2 undecided, -1 padding, else image
  std::vector<char> used;
  std::vector<std::size_t> order;  // g1 nodes, high degree first
  std::size_t matched = 0, dead1 = 0, dead2 = 0;
  std::size_t best;

  ExactSearch(const Flat& fa, const Flat& fb, std::size_t incumbent)
      : a(fa), b(fb), map1(fa.n, -2), used(fb.n, 0), best(incumbent) {
    order.resize(a.n);
    for (std::size_t i = 0; i < a.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (a.degree[x] != a.degree[y]) return a.degree[x] > a.degree[y];
      return x < y;
    });
  }

  // bookkeeping delta of deciding node i; returns (matched+, dead1+, dead2+)
  struct Delta {
    std::size_t m = 0, d1 = 0, d2 = 0;
  };

  Delta decide(std::size_t i, int target) {
    Delta d;
    for (std::size_t i2 = 0; i2 < a.n; ++i2) {
      if (map1[i2] == -2 || i2 == i) continue;
      if (!a.at(i, i2)) continue;
      if (target < 0 || map1[i2] < 0)
        ++d.d1;
      else if (b.at(static_cast<std::size_t>(target),
                    static_cast<std::size_t>(map1[i2])))
        ++d.m;
      else
        ++d.d1;
    }
    if (target >= 0) {
      // image edges to already-placed targets that found no matching g1 edge
      for (std::size_t i2 = 0; i2 < a.n; ++i2) {
        if (i2 == i || map1[i2] < 0) continue;
        if (b.at(static_cast<std::size_t>(target),
                 static_cast<std::size_t>(map1[i2])) &&
            !a.at(i, i2))
          ++d.d2;
      }
    }
    return d;
  }

  void run(std::size_t depth) {
    const std::size_t total = a.n_edges + b.n_edges;
    std::size_t rem1 = a.n_edges - matched - dead1;
    std::size_t rem2 = b.n_edges - matched - dead2;
    std::size_t ub_matched = matched + std::min(rem1, rem2);
    if (total - 2 * ub_matched >= best) return;
    if (depth == order.size()) {
      best = total - 2 * matched;  // strictly better; checked above
      return;
    }
    const std::size_t i = order[depth];

    // candidate images, closest degree first so good incumbents come early
    std::vector<std::size_t> cands;
    for (std::size_t j = 0; j < b.n; ++j)
      if (!used[j] && b.kind[j] == a.kind[i]) cands.push_back(j);
    std::stable_sort(cands.begin(), cands.end(),
                     [&](std::size_t x, std::size_t y) {
                       int dx = std::abs(b.degree[x] - a.degree[i]);
                       int dy = std::abs(b.degree[y] - a.degree[i]);
                       return dx < dy;
                     });

    auto apply = [&](int target) {
      Delta d = decide(i, target);
      map1[i] = target;
      if (target >= 0) used[static_cast<std::size_t>(target)] = 1;
      matched += d.m;
      dead1 += d.d1;
      dead2 += d.d2;
      run(depth + 1);
      matched -= d.m;
      dead1 -= d.d1;
      dead2 -= d.d2;
      if (target >= 0) used[static_cast<std::size_t>(target)] = 0;
      map1[i] = -2;
    };
    for (std::size_t j : cands) apply(static_cast<int>(j));
    apply(-1);
  }
};

}  // namespace

std::size_t edit_distance(const NetworkGraph& g1, const NetworkGraph& g2,
                          DistanceMode mode, std::size_t exact_node_budget) {
  Flat a = flatten(g1), b = flatten(g2);
  std::size_t heuristic = heuristic_distance(a, b);
  if (mode == DistanceMode::Heuristic) return heuristic;

  if (a.n > exact_node_budget || b.n > exact_node_budget)
    fail(Errc::BudgetExceeded,
         "exact edit distance is limited to " +
             std::to_string(exact_node_budget) + " nodes per graph (got " +
             std::to_string(a.n) + " and " + std::to_string(b.n) + ")");

  // the heuristic mapping is feasible, so its cost is a valid incumbent and
  // the exact answer can never exceed it
  ExactSearch s(a, b, heuristic + 1);
  s.run(0);
  return s.best;
}

}  // namespace itopo
