#include <algorithm>
#include <cstdint>
#include <map>

#include "itopo/error.hpp"
#include "itopo/recovery.hpp"

namespace itopo {

namespace {

// parents get ids above every host, in host order, so the same ring always
// materializes with the same labels no matter the discovery order
std::map<int, int> canonical_parents(const std::vector<int>& overlays) {
  std::vector<int> sorted = overlays;
  std::sort(sorted.begin(), sorted.end());
  std::map<int, int> parent;
  int next = sorted.empty() ? 1 : sorted.back() + 1;
  for (int o : sorted) parent[o] = next++;
  return parent;
}

std::size_t row_interference(const InterferenceMatrix& f, std::size_t k) {
  std::size_t s = 0;
  for (std::size_t l = 0; l < f.size(); ++l) s += f.at(k, l);
  return s;
}

// destinations of the outgoing tunnels of i, cheapest interference first
std::vector<int> ranked_destinations(const InterferenceMatrix& f, int i) {
  std::vector<std::pair<std::size_t, int>> keyed;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f.pairs()[k].first == i)
      keyed.emplace_back(row_interference(f, k), f.pairs()[k].second);
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  for (auto& [c, d] : keyed) out.push_back(d);
  return out;
}

}  // namespace

NetworkGraph identify_ring(const InterferenceMatrix& f,
                           const std::vector<int>& overlays) {
  if (overlays.size() < 5)
    fail(Errc::TooFewOverlays,
         "ring recovery needs at least 5 hosts, got " +
             std::to_string(overlays.size()));
  auto parent = canonical_parents(overlays);

  NetworkGraph ghat;
  auto ensure = [&](int o) {
    if (ghat.has_node(o)) return;
    ghat.add_node(o, NodeKind::Overlay);
    ghat.add_node(parent.at(o), NodeKind::Underlay);
    ghat.add_edge(o, parent.at(o));
  };

  std::vector<int> order = overlays;
  std::sort(order.begin(), order.end());
  for (int i : order) {
    ensure(i);
    auto ranked = ranked_destinations(f, i);
    if (ranked.size() < 2)
      fail(Errc::TooFewOverlays,
           "host " + std::to_string(i) + " has fewer than two tunnels");
    for (int t = 0; t < 2; ++t) {
      int j = ranked[t];
      ensure(j);
      if (!ghat.has_edge(parent.at(i), parent.at(j)))
        ghat.add_edge(parent.at(i), parent.at(j));
    }
  }

  // accept only a single simple cycle through all parents
  for (auto& [o, p] : parent) {
    std::size_t routers = 0;
    for (int nb : ghat.neighbors(p))
      if (ghat.kind(nb) == NodeKind::Underlay) ++routers;
    if (routers != 2)
      fail(Errc::NotARing, "router " + std::to_string(p) + " has " +
                               std::to_string(routers) +
                               " router neighbours, need 2");
  }
  std::size_t reached = 1;
  int start = parent.begin()->second, prev = -1, cur = start;
  do {
    int nxt = -1;
    for (int nb : ghat.neighbors(cur))
      if (ghat.kind(nb) == NodeKind::Underlay && nb != prev) {
        nxt = nb;
        break;
      }
    prev = cur;
    cur = nxt;
    ++reached;
  } while (cur != start && reached <= parent.size());
  if (cur != start || reached != parent.size() + 1)
    fail(Errc::NotARing, "routers do not close into one cycle");
  return ghat;
}

std::vector<int> all_neighbors(const InterferenceMatrix& f,
                               const std::vector<int>& overlays, int i) {
  std::vector<int> R;
  auto ranked = ranked_destinations(f, i);
  for (std::size_t t = 0; t < ranked.size() && R.size() < 2; ++t)
    R.push_back(ranked[t]);

  auto in_R = [&](int x) {
    return std::find(R.begin(), R.end(), x) != R.end();
  };
  bool grew = true;
  while (grew) {
    grew = false;
    std::pair<std::size_t, int> best{SIZE_MAX, 0};
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f.pairs()[k].first != i) continue;
      const int n = f.pairs()[k].second;
      if (in_R(n)) continue;
      // skip tunnels entangled with hosts already identified as neighbours
      bool clean = true;
      for (std::size_t l = 0; l < f.size() && clean; ++l)
        if (l != k && f.at(k, l) && in_R(f.pairs()[l].first) &&
            in_R(f.pairs()[l].second))
          clean = false;
      if (!clean) continue;
      best = std::min(best, {row_interference(f, k), n});
    }
    if (best.first != SIZE_MAX) {
      R.push_back(best.second);
      grew = true;
    }
  }
  std::sort(R.begin(), R.end());
  return R;
}

RingsResult identify_rings(const InterferenceMatrix& f,
                           const std::vector<int>& overlays) {
  auto parent = canonical_parents(overlays);
  RingsResult res;
  NetworkGraph& ghat = res.graph;
  auto ensure = [&](int o) {
    if (ghat.has_node(o)) return;
    ghat.add_node(o, NodeKind::Overlay);
    ghat.add_node(parent.at(o), NodeKind::Underlay);
    ghat.add_edge(o, parent.at(o));
  };
  std::vector<int> order = overlays;
  std::sort(order.begin(), order.end());
  for (int i : order) {
    ensure(i);
    for (int r : all_neighbors(f, overlays, i)) {
      ensure(r);
      if (!ghat.has_edge(parent.at(i), parent.at(r)))
        ghat.add_edge(parent.at(i), parent.at(r));
    }
  }

  // quality diagnostic: how far the rebuilt topology's interference pattern
  // is from what we were given; unroutable output counts as fully wrong
  try {
    InterferenceMatrix got = interference_from_topology(ghat);
    res.f_mismatch = got.pairs() == f.pairs() ? hamming_distance(got, f)
                                              : f.size() * f.size();
  } catch (const Error&) {
    res.f_mismatch = f.size() * f.size();
  }
  return res;
}

}  // namespace itopo
