#include <algorithm>
#include <map>
#include <set>

#include "itopo/bounds.hpp"
#include "itopo/error.hpp"

namespace itopo {

namespace {

// interfering row pairs (k < l), lexicographic
std::vector<std::pair<std::size_t, std::size_t>> interfering_pairs(
    const InterferenceMatrix& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < f.size(); ++k)
    for (std::size_t l = k + 1; l < f.size(); ++l)
      if (f.at(k, l)) out.emplace_back(k, l);
  return out;
}

}  // namespace

std::size_t upper_bound(const InterferenceMatrix& f) {
  const std::size_t L = f.size();
  const std::size_t ef = interfering_pairs(f).size();
  std::set<int> overlays;
  for (auto [s, d] : f.pairs()) {
    overlays.insert(s);
    overlays.insert(d);
  }
  return ef + 2 * L * ef + overlays.size() + 2 * L;
}

RecoveredGraph feasible_graph(const InterferenceMatrix& f) {
  const std::size_t L = f.size();
  RecoveredGraph res;
  if (L == 0) return res;

  std::set<int> overlay_set;
  for (auto [s, d] : f.pairs()) {
    overlay_set.insert(s);
    overlay_set.insert(d);
  }
  NetworkGraph& g = res.graph;
  for (int o : overlay_set) g.add_node(o, NodeKind::Overlay);
  int next_id = *overlay_set.rbegin() + 1;

  // backbone: one segment (edge) per interfering pair, traversed left to
  // right by both of its tunnels
  const auto ef = interfering_pairs(f);
  std::vector<int> w;
  for (std::size_t i = 0; i <= ef.size() && !ef.empty(); ++i) {
    w.push_back(next_id++);
    g.add_node(w[i], NodeKind::Underlay);
    if (i) g.add_edge(w[i - 1], w[i]);
  }

  // per-overlay access router
  std::map<int, int> parent;
  for (int o : overlay_set) {
    parent[o] = next_id++;
    g.add_node(parent[o], NodeKind::Underlay);
    g.add_edge(o, parent[o]);
  }

  // segments assigned to each tunnel, ascending
  std::vector<std::vector<std::size_t>> segs(L);
  for (std::size_t i = 0; i < ef.size(); ++i) {
    segs[ef[i].first].push_back(i);
    segs[ef[i].second].push_back(i);
  }

  // who travels each directed link.  Forced assignments (segments, access
  // links) are registered up front so no stitch can sneak onto a segment
  // whose owners have not walked it yet.
  std::map<std::pair<int, int>, std::vector<std::size_t>> users;
  for (std::size_t i = 0; i < ef.size(); ++i)
    users[{w[i], w[i + 1]}] = {ef[i].first, ef[i].second};
  for (std::size_t t = 0; t < L; ++t) {
    auto [s, d] = f.pairs()[t];
    users[{s, parent[s]}].push_back(t);
    users[{parent[d], d}].push_back(t);
  }

  // stitch a->b for tunnel t: reuse a direct edge only when everyone on its
  // (a,b) direction pairwise interferes with t, otherwise detour through a
  // private relay node
  auto connect = [&](int a, int b, std::size_t t, std::vector<int>& path) {
    if (a == b) return;
    if (g.has_edge(a, b)) {
      bool ok = true;
      for (std::size_t u : users[{a, b}])
        if (u != t && !f.at(t, u)) {
          ok = false;
          break;
        }
      if (ok) {
        users[{a, b}].push_back(t);
        path.push_back(b);
        return;
      }
    } else {
      g.add_edge(a, b);
      users[{a, b}].push_back(t);
      path.push_back(b);
      return;
    }
    int r = next_id++;
    g.add_node(r, NodeKind::Underlay);
    g.add_edge(a, r);
    g.add_edge(r, b);
    users[{a, r}].push_back(t);
    users[{r, b}].push_back(t);
    path.push_back(r);
    path.push_back(b);
  };

  for (std::size_t t = 0; t < L; ++t) {
    auto [s, d] = f.pairs()[t];
    std::vector<int> path{s, parent[s]};
    int cur = parent[s];
    for (std::size_t i : segs[t]) {
      connect(cur, w[i], t, path);  // reach the segment's left endpoint
      path.push_back(w[i + 1]);     // traverse the segment itself
      cur = w[i + 1];
    }
    connect(cur, parent[d], t, path);
    path.push_back(d);

    Tunnel tun;
    tun.src = s;
    tun.dst = d;
    tun.nodes = std::move(path);
    for (std::size_t i = 0; i + 1 < tun.nodes.size(); ++i)
      tun.links.emplace_back(tun.nodes[i], tun.nodes[i + 1]);
    res.tunnels.push_back(std::move(tun));
  }
  return res;
}

}  // namespace itopo
