#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include <json.hpp>

#include "itopo/bounds.hpp"
#include "itopo/error.hpp"

namespace itopo {

namespace {

// guards the exact search against pathological instances inside the edge
// budget; generous enough that every in-scope instance finishes
constexpr std::size_t kStepGuard = 50'000'000;

// Adjacency view of the interference graph.  Cliques of this graph are
// exactly the sets of tunnels that may legally share one directed link.
struct IGraph {
  std::size_t n = 0;
  std::vector<char> adj;  // n*n
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // k < l, lex order
  std::vector<std::size_t> deg;

  bool a(std::size_t i, std::size_t j) const { return adj[i * n + j]; }
};

IGraph make_igraph(const InterferenceGraph& gf) {
  IGraph g;
  g.n = gf.n;
  g.adj.assign(g.n * g.n, 0);
  g.deg.assign(g.n, 0);
  g.edges = gf.edges;
  std::sort(g.edges.begin(), g.edges.end());
  for (auto [k, l] : g.edges) {
    if (k >= g.n || l >= g.n || k == l)
      fail(Errc::IndexMismatch, "interference graph edge out of range");
    g.adj[k * g.n + l] = g.adj[l * g.n + k] = 1;
    ++g.deg[k];
    ++g.deg[l];
  }
  return g;
}

std::vector<std::size_t> common_neighbors(const IGraph& g, std::size_t k,
                                          std::size_t l) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.n; ++v)
    if (v != k && v != l && g.a(v, k) && g.a(v, l)) out.push_back(v);
  return out;
}

// every maximal clique of g, sorted for stable branching; counts recursion
// steps against steps.  Standard pivoted Bron–Kerbosch.
std::vector<std::vector<std::size_t>> all_maximal_cliques(const IGraph& g,
                                                          std::size_t& steps) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> R, P(g.n), X;
  std::iota(P.begin(), P.end(), std::size_t{0});

  auto bk = [&](auto&& self, std::vector<std::size_t>& r,
                std::vector<std::size_t> p, std::vector<std::size_t> x) -> void {
    if (++steps > kStepGuard)
      fail(Errc::BudgetExceeded, "clique enumeration exceeded the step guard");
    if (p.empty() && x.empty()) {
      if (r.size() >= 2) {
        auto clique = r;
        std::sort(clique.begin(), clique.end());
        out.push_back(std::move(clique));
      }
      return;
    }
    // pivot on the vertex covering most of P
    std::size_t pivot = 0, best = 0;
    bool have = false;
    for (std::size_t u : p) {
      std::size_t c = 0;
      for (std::size_t v : p)
        if (g.a(u, v)) ++c;
      if (!have || c > best) {
        have = true;
        best = c;
        pivot = u;
      }
    }
    for (std::size_t u : x) {
      std::size_t c = 0;
      for (std::size_t v : p)
        if (g.a(u, v)) ++c;
      if (!have || c > best) {
        have = true;
        best = c;
        pivot = u;
      }
    }
    std::vector<std::size_t> cand;
    for (std::size_t u : p)
      if (!g.a(u, pivot)) cand.push_back(u);
    for (std::size_t u : cand) {
      r.push_back(u);
      std::vector<std::size_t> p2, x2;
      for (std::size_t v : p)
        if (g.a(u, v)) p2.push_back(v);
      for (std::size_t v : x)
        if (g.a(u, v)) x2.push_back(v);
      self(self, r, std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(std::remove(p.begin(), p.end(), u), p.end());
      x.push_back(u);
    }
  };
  bk(bk, R, std::move(P), std::move(X));
  std::sort(out.begin(), out.end());
  return out;
}

// fixed-width bitset over interference edges
struct EdgeMask {
  std::vector<std::uint64_t> w;
  explicit EdgeMask(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const {
    return (w[i >> 6] >> (i & 63)) & 1;
  }
  bool intersects(const EdgeMask& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  void operator|=(const EdgeMask& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
};

struct EdgeIndex {
  std::vector<std::size_t> id;  // n*n -> edge index or npos
  std::size_t n;
  std::size_t operator()(std::size_t a, std::size_t b) const {
    return id[a * n + b];
  }
};

EdgeIndex make_edge_index(const IGraph& g) {
  EdgeIndex e;
  e.n = g.n;
  e.id.assign(g.n * g.n, SIZE_MAX);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [a, b] = g.edges[i];
    e.id[a * g.n + b] = e.id[b * g.n + a] = i;
  }
  return e;
}

// edges e1, e2 can be covered by one clique iff their endpoint union is a
// clique in the interference graph
bool co_coverable(const IGraph& g, std::pair<std::size_t, std::size_t> e1,
                  std::pair<std::size_t, std::size_t> e2) {
  std::size_t vs[4] = {e1.first, e1.second, e2.first, e2.second};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (vs[i] != vs[j] && !g.a(vs[i], vs[j])) return false;
  return true;
}

// greedy packing of pairwise non-co-coverable uncovered edges: each needs
// its own clique, so the pack size bounds the remaining cover from below
std::size_t remaining_lower_bound(const IGraph& g,
                                  const std::vector<char>& covered) {
  std::vector<std::pair<std::size_t, std::size_t>> pack;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (covered[i]) continue;
    bool indep = true;
    for (auto& e : pack)
      if (co_coverable(g, e, g.edges[i])) {
        indep = false;
        break;
      }
    if (indep) pack.push_back(g.edges[i]);
  }
  return pack.size();
}

std::vector<std::size_t> grow_clique(const IGraph& g, std::size_t k,
                                     std::size_t l,
                                     const EdgeIndex& eidx,
                                     const std::vector<char>& covered) {
  std::vector<std::size_t> clique{k, l};
  auto cand = common_neighbors(g, k, l);
  while (!cand.empty()) {
    // favour the candidate whose edges into the clique are mostly uncovered
    std::size_t best = cand[0], best_gain = 0;
    for (std::size_t u : cand) {
      std::size_t gain = 0;
      for (std::size_t v : clique)
        if (!covered[eidx(u, v)]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = u;
      }
    }
    clique.push_back(best);
    std::vector<std::size_t> next;
    for (std::size_t u : cand)
      if (u != best && g.a(u, best)) next.push_back(u);
    cand = std::move(next);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

void mark(const std::vector<std::size_t>& clique, const EdgeIndex& eidx,
          std::vector<char>& covered, std::vector<std::size_t>& newly) {
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j) {
      std::size_t e = eidx(clique[i], clique[j]);
      if (!covered[e]) {
        covered[e] = 1;
        newly.push_back(e);
      }
    }
}

std::vector<std::vector<std::size_t>> greedy_cover(const IGraph& g,
                                                   const EdgeIndex& eidx) {
  std::vector<char> covered(g.edges.size(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (covered[i]) continue;
    auto clique =
        grow_clique(g, g.edges[i].first, g.edges[i].second, eidx, covered);
    std::vector<std::size_t> newly;
    mark(clique, eidx, covered, newly);
    out.push_back(std::move(clique));
  }
  return out;
}

// drop cliques whose every edge is also covered elsewhere, so each survivor
// keeps at least one private edge; minimum covers are already irredundant,
// greedy ones may shrink here
void drop_redundant(std::vector<std::vector<std::size_t>>& cliques,
                    const IGraph& g, const EdgeIndex& eidx) {
  std::vector<int> count(g.edges.size(), 0);
  for (auto& q : cliques)
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j) ++count[eidx(q[i], q[j])];
  std::vector<std::vector<std::size_t>> kept;
  for (auto& q : cliques) {
    bool redundant = true;
    for (std::size_t i = 0; i < q.size() && redundant; ++i)
      for (std::size_t j = i + 1; j < q.size() && redundant; ++j)
        if (count[eidx(q[i], q[j])] == 1) redundant = false;
    if (redundant && q.size() >= 2) {
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
          --count[eidx(q[i], q[j])];
    } else {
      kept.push_back(q);
    }
  }
  cliques = std::move(kept);
}

}  // namespace

CliqueCover min_edge_clique_cover(const InterferenceGraph& gf, CoverMode mode,
                                  std::size_t edge_budget) {
  IGraph g = make_igraph(gf);
  EdgeIndex eidx = make_edge_index(g);

  CliqueCover out;
  if (mode == CoverMode::Greedy) {
    out.cliques = greedy_cover(g, eidx);
    out.exact = g.edges.empty();
    drop_redundant(out.cliques, g, eidx);
    return out;
  }

  if (g.edges.size() > edge_budget)
    fail(Errc::BudgetExceeded,
         "exact cover limited to " + std::to_string(edge_budget) +
             " interference edges, got " + std::to_string(g.edges.size()));
  if (g.edges.empty()) return {{}, true};

  // Set cover over the maximal cliques.  Any clique of a cover can be grown
  // to a maximal one without invalidating it, so restricting the search to
  // maximal cliques loses no minimum solution.
  const std::size_t ne = g.edges.size();
  std::size_t steps = 0;
  const auto cliques = all_maximal_cliques(g, steps);

  std::vector<EdgeMask> cmask(cliques.size(), EdgeMask(ne));
  std::vector<std::vector<std::size_t>> cands(ne);
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    const auto& q = cliques[c];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j) {
        std::size_t e = eidx(q[i], q[j]);
        cmask[c].set(e);
        cands[e].push_back(c);
      }
  }

  // co[e] marks every edge that shares a clique with e; the greedy packing of
  // mutually unsharing edges lower-bounds the cliques still needed
  std::vector<EdgeMask> co(ne, EdgeMask(ne));
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    std::vector<std::size_t> es;
    const auto& q = cliques[c];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j)
        es.push_back(eidx(q[i], q[j]));
    for (std::size_t a : es)
      for (std::size_t b : es)
        if (a != b) co[a].set(b);
  }
  auto pack_bound = [&](const EdgeMask& covered) {
    std::size_t cnt = 0;
    EdgeMask blocked = covered;
    for (std::size_t e = 0; e < ne; ++e) {
      if (blocked.test(e)) continue;
      ++cnt;
      blocked |= co[e];
      blocked.set(e);
    }
    return cnt;
  };

  CliqueCover best;
  best.cliques = greedy_cover(g, eidx);

  EdgeMask covered(ne);
  std::vector<std::size_t> chosen;

  // edges living in exactly one maximal clique force it into every cover
  for (std::size_t e = 0; e < ne; ++e) {
    if (covered.test(e) || cands[e].size() != 1) continue;
    std::size_t c = cands[e][0];
    chosen.push_back(c);
    covered |= cmask[c];
  }

  std::size_t uncovered0 = 0;
  for (std::size_t e = 0; e < ne; ++e)
    if (!covered.test(e)) ++uncovered0;

  if (uncovered0 == 0 && chosen.size() < best.cliques.size()) {
    best.cliques.clear();
    for (std::size_t c : chosen) best.cliques.push_back(cliques[c]);
  } else if (uncovered0 > 0) {
    auto rec = [&](auto&& self, const EdgeMask& cov) -> void {
      if (++steps > kStepGuard)
        fail(Errc::BudgetExceeded, "cover search exceeded the step guard");
      // fail-first: the uncovered edge with the fewest candidate cliques
      std::size_t pick = SIZE_MAX, fewest = SIZE_MAX;
      for (std::size_t e = 0; e < ne; ++e) {
        if (cov.test(e)) continue;
        if (cands[e].size() < fewest) {
          fewest = cands[e].size();
          pick = e;
        }
      }
      if (pick == SIZE_MAX) {
        if (chosen.size() < best.cliques.size()) {
          best.cliques.clear();
          for (std::size_t c : chosen) best.cliques.push_back(cliques[c]);
        }
        return;
      }
      if (chosen.size() + pack_bound(cov) >= best.cliques.size()) return;

      // most new coverage first so a strong incumbent lands early
      std::vector<std::pair<std::size_t, std::size_t>> order;
      for (std::size_t c : cands[pick]) {
        std::size_t fresh = 0;
        for (std::size_t w = 0; w < cov.w.size(); ++w)
          fresh += static_cast<std::size_t>(
              std::popcount(cmask[c].w[w] & ~cov.w[w]));
        order.push_back({fresh, c});
      }
      std::sort(order.begin(), order.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      for (auto [fresh, c] : order) {
        EdgeMask next = cov;
        next |= cmask[c];
        chosen.push_back(c);
        self(self, next);
        chosen.pop_back();
      }
    };
    rec(rec, covered);
  }

  best.exact = true;
  drop_redundant(best.cliques, g, eidx);
  return best;
}

std::string cover_to_json(const CliqueCover& cover) {
  nlohmann::json j;
  j["cliques"] = cover.cliques;
  j["size"] = cover.size();
  j["exact"] = cover.exact;
  return j.dump();
}

std::size_t lower_bound(const InterferenceMatrix& f, CoverMode mode,
                        std::size_t edge_budget) {
  IGraph g = make_igraph(build_interference_graph(f));
  if (mode == CoverMode::Greedy) {
    // every edge in the pack needs a clique of its own
    std::vector<char> covered(g.edges.size(), 0);
    std::size_t c = remaining_lower_bound(g, covered);
    return (c + 1) / 2;
  }
  std::size_t c =
      min_edge_clique_cover(build_interference_graph(f), mode, edge_budget)
          .size();
  return (c + 1) / 2;
}

}  // namespace itopo
