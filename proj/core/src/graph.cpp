#include "itopo/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "itopo/error.hpp"

namespace itopo {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::OverlayDegreeViolation: return "OverlayDegreeViolation";
    case Errc::Disconnected: return "Disconnected";
    case Errc::Unreachable: return "Unreachable";
    case Errc::SimulationHorizonTooShort: return "SimulationHorizonTooShort";
    case Errc::DegenerateRegressor: return "DegenerateRegressor";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::BudgetTooSmall: return "BudgetTooSmall";
    case Errc::Infeasible: return "Infeasible";
    case Errc::TimeBudgetExceeded: return "TimeBudgetExceeded";
    case Errc::IndexMismatch: return "IndexMismatch";
    case Errc::NotATree: return "NotATree";
    case Errc::NotARing: return "NotARing";
    case Errc::TooFewOverlays: return "TooFewOverlays";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

void NetworkGraph::add_node(int id, NodeKind kind) {
  auto [it, fresh] = nodes_.emplace(id, kind);
  if (!fresh && it->second != kind)
    fail(Errc::DuplicateEdge,
         "node " + std::to_string(id) + " re-added with different kind");
  adj_.try_emplace(id);
}

void NetworkGraph::remove_node(int id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return;
  for (int nb : adj_[id]) {
    auto& v = adj_[nb];
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
    --edge_count_;
  }
  adj_.erase(id);
  nodes_.erase(it);
}

NodeKind NetworkGraph::kind(int id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    fail(Errc::Unreachable, "unknown node " + std::to_string(id));
  return it->second;
}

void NetworkGraph::set_kind(int id, NodeKind kind) {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    fail(Errc::Unreachable, "unknown node " + std::to_string(id));
  it->second = kind;
}

void NetworkGraph::add_edge(int a, int b) {
  if (a == b)
    fail(Errc::SelfLoop, "self loop at node " + std::to_string(a));
  if (!has_node(a) || !has_node(b))
    fail(Errc::Unreachable, "edge endpoint not a node: " + std::to_string(a) +
                                "-" + std::to_string(b));
  if (has_edge(a, b))
    fail(Errc::DuplicateEdge,
         "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  auto insert_sorted = [](std::vector<int>& v, int x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  };
  insert_sorted(adj_[a], b);
  insert_sorted(adj_[b], a);
  ++edge_count_;
}

void NetworkGraph::remove_edge(int a, int b) {
  if (!has_edge(a, b))
    fail(Errc::Unreachable,
         "no edge " + std::to_string(a) + "-" + std::to_string(b));
  auto drop = [](std::vector<int>& v, int x) {
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
  };
  drop(adj_[a], b);
  drop(adj_[b], a);
  --edge_count_;
}

bool NetworkGraph::has_edge(int a, int b) const {
  auto it = adj_.find(a);
  if (it == adj_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), b);
}

const std::vector<int>& NetworkGraph::neighbors(int id) const {
  auto it = adj_.find(id);
  if (it == adj_.end())
    fail(Errc::Unreachable, "unknown node " + std::to_string(id));
  return it->second;
}

int NetworkGraph::max_node_id() const {
  return nodes_.empty() ? 0 : nodes_.rbegin()->first;
}

std::vector<int> NetworkGraph::node_ids() const {
  std::vector<int> out;
  out.reserve(nodes_.size());
  for (auto& [id, k] : nodes_) out.push_back(id);
  return out;
}

std::vector<int> NetworkGraph::overlay_ids() const {
  std::vector<int> out;
  for (auto& [id, k] : nodes_)
    if (k == NodeKind::Overlay) out.push_back(id);
  return out;
}

std::vector<int> NetworkGraph::underlay_ids() const {
  std::vector<int> out;
  for (auto& [id, k] : nodes_)
    if (k == NodeKind::Underlay) out.push_back(id);
  return out;
}

std::vector<std::pair<int, int>> NetworkGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (auto& [id, nbrs] : adj_)
    for (int nb : nbrs)
      if (id < nb) out.emplace_back(id, nb);
  return out;
}

bool NetworkGraph::connected() const {
  if (nodes_.empty()) return true;
  std::set<int> seen;
  std::deque<int> q{nodes_.begin()->first};
  seen.insert(nodes_.begin()->first);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int nb : adj_.at(v))
      if (seen.insert(nb).second) q.push_back(nb);
  }
  return seen.size() == nodes_.size();
}

void validate_network(const NetworkGraph& g) {
  for (int o : g.overlay_ids()) {
    const auto& nb = g.neighbors(o);
    if (nb.size() != 1)
      fail(Errc::OverlayDegreeViolation,
           "host " + std::to_string(o) + " has degree " +
               std::to_string(nb.size()) + ", expected 1");
    if (g.kind(nb[0]) == NodeKind::Overlay)
      fail(Errc::OverlayDegreeViolation,
           "host " + std::to_string(o) + " attached to host " +
               std::to_string(nb[0]));
  }
  if (!g.connected()) fail(Errc::Disconnected, "graph is not connected");
}

NetworkGraph build_network(const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int>& overlays) {
  NetworkGraph g;
  for (int o : overlays) g.add_node(o, NodeKind::Overlay);
  for (auto [a, b] : edges) {
    if (!g.has_node(a)) g.add_node(a, NodeKind::Underlay);
    if (!g.has_node(b)) g.add_node(b, NodeKind::Underlay);
    g.add_edge(a, b);
  }
  validate_network(g);
  return g;
}

std::vector<int> shortest_path_route(const NetworkGraph& g, int src, int dst) {
  if (!g.has_node(src) || !g.has_node(dst))
    fail(Errc::Unreachable, "route endpoint not in graph");
  // BFS from dst gives the distance-to-destination field; the lex-min
  // shortest path is then the greedy walk from src that always steps to the
  // smallest-id neighbor one unit closer to dst.
  std::map<int, int> dist;
  std::deque<int> q{dst};
  dist[dst] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int nb : g.neighbors(v))
      if (!dist.count(nb)) {
        dist[nb] = dist[v] + 1;
        q.push_back(nb);
      }
  }
  auto at = dist.find(src);
  if (at == dist.end())
    fail(Errc::Unreachable, "no path " + std::to_string(src) + " -> " +
                                std::to_string(dst));
  std::vector<int> path{src};
  int cur = src;
  while (cur != dst) {
    int want = dist[cur] - 1;
    int next = -1;
    for (int nb : g.neighbors(cur)) {  // neighbors are sorted ascending
      auto d = dist.find(nb);
      if (d != dist.end() && d->second == want) {
        next = nb;
        break;
      }
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

std::vector<Tunnel> enumerate_tunnels(const NetworkGraph& g) {
  std::vector<Tunnel> out;
  const auto overlays = g.overlay_ids();
  for (int s : overlays)
    for (int d : overlays) {
      if (s == d) continue;
      Tunnel t;
      t.src = s;
      t.dst = d;
      t.nodes = shortest_path_route(g, s, d);
      for (std::size_t i = 0; i + 1 < t.nodes.size(); ++i)
        t.links.emplace_back(t.nodes[i], t.nodes[i + 1]);
      out.push_back(std::move(t));
    }
  return out;
}

NetworkGraph reduce_to_minimal(const NetworkGraph& g) {
  NetworkGraph r = g;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u : r.underlay_ids()) {
      std::vector<int> hosts, routers;
      for (int nb : r.neighbors(u))
        (r.kind(nb) == NodeKind::Overlay ? hosts : routers).push_back(nb);
      const std::size_t p = hosts.size(), d = routers.size();
      if (p == 0 && d <= 1) {
        // dead-end router with no host: contributes nothing to any route
        r.remove_node(u);
        changed = true;
      } else if (p == 0 && d == 2) {
        // pass-through router: splice the chain
        int a = routers[0], b = routers[1];
        r.remove_node(u);
        if (!r.has_edge(a, b)) r.add_edge(a, b);
        changed = true;
      } else if (p == 1 && d == 1) {
        // router whose only job is extending one host's access link
        int h = hosts[0], a = routers[0];
        r.remove_node(u);
        if (!r.has_edge(h, a)) r.add_edge(h, a);
        changed = true;
      }
      if (changed) break;  // rescan from the smallest id after every change
    }
  }
  return r;
}

NetworkGraph canonical_form(const NetworkGraph& g) {
  std::map<int, int> remap;
  int next = 1;
  for (int o : g.overlay_ids()) remap[o] = next++;
  for (int u : g.underlay_ids()) remap[u] = next++;
  NetworkGraph out;
  for (auto [old, nu] : remap) out.add_node(nu, g.kind(old));
  for (auto [a, b] : g.edges()) out.add_edge(remap[a], remap[b]);
  return out;
}

}  // namespace itopo
