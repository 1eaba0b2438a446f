#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "itopo/error.hpp"

namespace itopo::testing {

namespace {

// Working scratch tree: nodes 0.., adjacency lists, host flags.  Ids are
// assigned only at the end so that the id->structure mapping is seeded too.
struct Scratch {
  std::vector<std::vector<int>> adj;
  std::vector<char> host;

  int add(bool is_host) {
    adj.emplace_back();
    host.push_back(is_host ? 1 : 0);
    return static_cast<int>(adj.size()) - 1;
  }
  void link(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
};

}  // namespace

NetworkGraph make_minimal_tree(std::size_t leaves, std::uint64_t seed) {
  if (leaves < 3) throw std::invalid_argument("need >= 3 leaves");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  Scratch t;
  int root = t.add(false);
  for (int i = 0; i < 3; ++i) t.link(root, t.add(true));
  std::size_t hosts = 3;
  while (hosts < leaves) {
    std::vector<int> splittable;
    for (std::size_t v = 0; v < t.adj.size(); ++v)
      if (!t.host[v] && t.adj[v].size() >= 4)
        splittable.push_back(static_cast<int>(v));
    if (!splittable.empty() && rng() % 100 < 35) {
      int u = splittable[rng() % splittable.size()];
      auto nbrs = t.adj[u];
      std::shuffle(nbrs.begin(), nbrs.end(), rng);
      std::size_t take =
          2 + rng() % (nbrs.size() - 3);  // 2 .. deg-2 neighbours move
      int w = t.add(false);
      for (std::size_t i = 0; i < take; ++i) {
        int x = nbrs[i];
        auto& au = t.adj[u];
        au.erase(std::find(au.begin(), au.end(), x));
        auto& ax = t.adj[x];
        ax.erase(std::find(ax.begin(), ax.end(), u));
        t.link(w, x);
      }
      t.link(u, w);
    } else {
      std::vector<int> internals;
      for (std::size_t v = 0; v < t.adj.size(); ++v)
        if (!t.host[v]) internals.push_back(static_cast<int>(v));
      t.link(internals[rng() % internals.size()], t.add(true));
      ++hosts;
    }
  }

  // Hand out ids: hosts get a shuffled permutation of 1..k, routers get
  // large temporaries; canonical_form then packs routers to k+1.. .
  std::vector<int> host_ids(hosts);
  for (std::size_t i = 0; i < hosts; ++i) host_ids[i] = static_cast<int>(i + 1);
  std::shuffle(host_ids.begin(), host_ids.end(), rng);
  std::vector<int> id(t.adj.size());
  std::size_t hi = 0;
  for (std::size_t v = 0; v < t.adj.size(); ++v)
    id[v] = t.host[v] ? host_ids[hi++] : static_cast<int>(10000 + v);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> overlays;
  for (std::size_t v = 0; v < t.adj.size(); ++v) {
    if (t.host[v]) overlays.push_back(id[v]);
    for (int w : t.adj[v])
      if (static_cast<int>(v) < w) edges.emplace_back(id[v], id[w]);
  }
  return canonical_form(build_network(edges, overlays));
}

NetworkGraph make_nonminimal_tree(const NetworkGraph& minimal,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 7);
  NetworkGraph g = minimal;
  std::size_t ops = 1 + rng() % 4;
  for (std::size_t i = 0; i < ops; ++i) {
    auto es = g.edges();
    auto [a, b] = es[rng() % es.size()];
    int mid = g.max_node_id() + 1;
    g.remove_edge(a, b);
    g.add_node(mid, NodeKind::Underlay);
    g.add_edge(a, mid);
    g.add_edge(mid, b);
  }
  return g;
}

NetworkGraph make_ring(std::size_t k, std::uint64_t seed,
                       std::vector<int>* host_order) {
  std::mt19937_64 rng(seed * 0xd1342543de82ef95ULL + 3);
  std::vector<int> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i + 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> overlays(perm);
  int base = static_cast<int>(k) + 1;
  for (std::size_t i = 0; i < k; ++i) {
    int r = base + static_cast<int>(i);
    int rn = base + static_cast<int>((i + 1) % k);
    edges.emplace_back(r, rn);
    edges.emplace_back(perm[i], r);
  }
  if (host_order) *host_order = perm;
  return build_network(edges, overlays);
}

std::vector<int> ring_host_order(const NetworkGraph& g) {
  auto routers = g.underlay_ids();
  if (routers.size() < 3) throw std::runtime_error("not a ring");
  auto host_at = [&](int r) {
    int h = 0, cnt = 0;
    for (int x : g.neighbors(r))
      if (g.kind(x) == NodeKind::Overlay) {
        h = x;
        ++cnt;
      }
    if (cnt != 1) throw std::runtime_error("router without unique host");
    return h;
  };
  auto next_router = [&](int r, int prev) {
    for (int x : g.neighbors(r))
      if (g.kind(x) == NodeKind::Underlay && x != prev) return x;
    throw std::runtime_error("broken cycle");
  };
  std::vector<int> order;
  int start = routers.front(), prev = -1, cur = start;
  do {
    order.push_back(host_at(cur));
    int nx = next_router(cur, prev);
    prev = cur;
    cur = nx;
  } while (cur != start && order.size() <= routers.size());
  if (order.size() != routers.size()) throw std::runtime_error("not a cycle");
  return order;
}

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::size_t n = a.size();
  auto matches = [&](const std::vector<int>& seq) {
    for (std::size_t off = 0; off < n; ++off) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        ok = seq[(off + i) % n] == b[i];
      if (ok) return true;
    }
    return false;
  };
  std::vector<int> rev(a.rbegin(), a.rend());
  return matches(a) || matches(rev);
}

namespace {

std::string ahu(const NetworkGraph& g, int u, int parent) {
  std::string label = g.kind(u) == NodeKind::Overlay
                          ? "h" + std::to_string(u)
                          : std::string();
  std::vector<std::string> kids;
  for (int v : g.neighbors(u))
    if (v != parent) kids.push_back(ahu(g, v, u));
  if (kids.empty()) return label;
  std::sort(kids.begin(), kids.end());
  std::string out = label + "(";
  for (auto& k : kids) out += k;
  return out + ")";
}

std::vector<int> tree_centers(const NetworkGraph& g) {
  auto ids = g.node_ids();
  if (ids.size() <= 2) return ids;
  std::map<int, std::size_t> deg;
  for (int v : ids) deg[v] = g.neighbors(v).size();
  std::vector<int> layer;
  for (int v : ids)
    if (deg[v] <= 1) layer.push_back(v);
  std::size_t remaining = ids.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<int> next;
    for (int v : layer) {
      deg[v] = 0;
      for (int w : g.neighbors(v))
        if (deg[w] > 0 && --deg[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

std::string tree_encoding(const NetworkGraph& tree) {
  if (tree.num_nodes() != tree.num_edges() + 1 || !tree.connected())
    throw std::runtime_error("tree_encoding: not a tree");
  std::string best;
  for (int c : tree_centers(tree)) {
    std::string enc = ahu(tree, c, -1);
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

std::vector<std::vector<int>> sibling_partition(const NetworkGraph& g) {
  std::vector<std::vector<int>> groups;
  for (int r : g.underlay_ids()) {
    std::vector<int> hosts;
    for (int x : g.neighbors(r))
      if (g.kind(x) == NodeKind::Overlay) hosts.push_back(x);
    if (!hosts.empty()) groups.push_back(std::move(hosts));
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

NetworkGraph make_grid() {
  return build_network({{7, 11},
                        {9, 11},
                        {8, 12},
                        {10, 12},
                        {7, 8},
                        {11, 12},
                        {9, 10},
                        {1, 8},
                        {2, 9},
                        {3, 10},
                        {4, 7},
                        {5, 11},
                        {6, 12}},
                       {1, 2, 3, 4, 5, 6});
}

NetworkGraph make_star3() {
  return build_network({{1, 4}, {2, 4}, {3, 4}}, {1, 2, 3});
}

NetworkGraph make_deep_tree7() {
  return build_network({{1, 8},
                        {2, 8},
                        {8, 9},
                        {3, 9},
                        {4, 9},
                        {9, 10},
                        {5, 10},
                        {6, 10},
                        {7, 10}},
                       {1, 2, 3, 4, 5, 6, 7});
}

NetworkGraph make_fused_cycles() {
  // Routers 7..12 carry hosts 1..6 in order; two cycles share edge 7-9.
  return build_network({{7, 8},
                        {8, 11},
                        {11, 9},
                        {9, 7},
                        {9, 12},
                        {12, 10},
                        {10, 7},
                        {1, 7},
                        {2, 8},
                        {3, 9},
                        {4, 10},
                        {5, 11},
                        {6, 12}},
                       {1, 2, 3, 4, 5, 6});
}

CmdResult run_cmd(const std::string& cmd) {
  CmdResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace itopo::testing
