#include <algorithm>
#include <map>
#include <set>

#include "itopo/bounds.hpp"
#include "itopo/error.hpp"
#include "itopo/recovery.hpp"

namespace itopo {

namespace {

struct PendingTree {
  NetworkGraph tree;
  std::set<int> hosts;
  int anchor = 0;
};

// mutually-confirmed sibling set around host i: every member must report
// every other member (and i) as a sibling
std::set<int> consistent_sibling_set(const InterferenceMatrix& f,
                                     const std::vector<int>& o_cur, int i) {
  std::vector<int> X;
  for (int j : o_cur)
    if (are_siblings(f, i, j)) X.push_back(j);
  if (X.size() < 2) return {};
  std::set<int> S(X.begin(), X.end());
  for (int j : X) {
    std::set<int> Xj;
    for (int m : o_cur)
      if (are_siblings(f, j, m)) Xj.insert(m);
    std::set<int> inter;
    for (int m : S)
      if (Xj.count(m)) inter.insert(m);
    S = std::move(inter);
  }
  return S;
}

NetworkGraph remap_tree_internals(const NetworkGraph& t, int base,
                                  std::map<int, int>& out_map) {
  out_map.clear();
  for (int o : t.overlay_ids()) out_map[o] = o;
  int next = base;
  for (int u : t.underlay_ids()) out_map[u] = next++;
  NetworkGraph r;
  for (auto [old, nu] : out_map) r.add_node(nu, t.kind(old));
  for (auto [a, b] : t.edges()) r.add_edge(out_map.at(a), out_map.at(b));
  return r;
}

void add_graph_into(NetworkGraph& dst, const NetworkGraph& src) {
  for (int n : src.node_ids()) dst.add_node(n, src.kind(n));
  for (auto [a, b] : src.edges()) dst.add_edge(a, b);
}

// one attachment candidate: distance to the target matrix over the hosts
// present, or SIZE_MAX when the graph cannot route
std::size_t splice_distance(const NetworkGraph& g,
                            const InterferenceMatrix& f_orig) {
  try {
    InterferenceMatrix got = interference_from_topology(g);
    std::set<int> hosts;
    for (int o : g.overlay_ids()) hosts.insert(o);
    InterferenceMatrix want = restrict_rows(f_orig, hosts);
    if (got.pairs() != want.pairs()) return SIZE_MAX;
    return hamming_distance(got, want);
  } catch (const Error&) {
    return SIZE_MAX;
  }
}

NetworkGraph splice_tree(const NetworkGraph& ghat, const PendingTree& pt,
                         const InterferenceMatrix& f_orig) {
  const int a = pt.anchor;
  int base = ghat.max_node_id() + 1;
  for (auto [s, d] : f_orig.pairs()) base = std::max({base, s + 1, d + 1});
  std::map<int, int> remap;
  NetworkGraph t2 = remap_tree_internals(pt.tree, base, remap);

  const int pa = ghat.neighbors(a).at(0);

  struct Cand {
    std::size_t dist = SIZE_MAX;
    std::size_t edges = SIZE_MAX;
    int mode = 0;
    int j = 0;
    NetworkGraph g;
  };
  Cand best;
  bool have = false;

  auto consider = [&](NetworkGraph g, int mode, int j) {
    Cand c;
    c.dist = splice_distance(g, f_orig);
    c.edges = g.num_edges();
    c.mode = mode;
    c.j = j;
    c.g = std::move(g);
    auto key = [](const Cand& x) {
      return std::make_tuple(x.dist, x.edges, x.mode, x.j);
    };
    if (!have || key(c) < key(best)) {
      best = std::move(c);
      have = true;
    }
  };

  for (int j : t2.underlay_ids()) {
    // replace the anchor host with tree node j, keeping the anchor's router
    NetworkGraph g1 = ghat;
    g1.remove_node(a);
    add_graph_into(g1, t2);
    g1.add_edge(j, pa);
    consider(std::move(g1), 0, j);

    // replace the anchor's router with tree node j outright
    NetworkGraph g2 = ghat;
    std::vector<int> nbrs;
    for (int n : g2.neighbors(pa))
      if (n != a) nbrs.push_back(n);
    g2.remove_node(pa);
    g2.remove_node(a);
    add_graph_into(g2, t2);
    for (int n : nbrs)
      if (!g2.has_edge(j, n)) g2.add_edge(j, n);
    consider(std::move(g2), 1, j);
  }
  return best.g;
}

}  // namespace

GeneralResult identify_general(const InterferenceMatrix& f,
                               const std::vector<int>& overlays) {
  std::vector<int> o_cur = overlays;
  std::sort(o_cur.begin(), o_cur.end());
  InterferenceMatrix f_cur = f;

  // phase one: pull out candidate tree host sets, collapsing each onto one
  // anchor so nested sibling structure surfaces on the next sweep
  std::vector<std::set<int>> groups;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i : o_cur) {
      std::set<int> S = consistent_sibling_set(f_cur, o_cur, i);
      if (S.size() < 2) continue;

      std::set<int> merged = S;
      std::vector<std::set<int>> rest;
      for (auto& g : groups) {
        bool overlap = false;
        for (int m : g)
          if (merged.count(m)) {
            overlap = true;
            break;
          }
        if (overlap)
          merged.insert(g.begin(), g.end());
        else
          rest.push_back(g);
      }
      rest.push_back(merged);
      groups = std::move(rest);

      const int anchor = *S.begin();
      std::set<int> removed = S;
      removed.erase(anchor);
      f_cur = drop_hosts(f_cur, removed);
      std::vector<int> next_o;
      for (int o : o_cur)
        if (!removed.count(o)) next_o.push_back(o);
      o_cur = std::move(next_o);
      changed = true;
      break;  // restart the sweep on the reduced matrix
    }
  }
  std::sort(groups.begin(), groups.end());

  // phase two: recover each group as a tree from the original matrix
  f_cur = f;
  o_cur = overlays;
  std::sort(o_cur.begin(), o_cur.end());
  std::vector<PendingTree> trees;
  for (const auto& S : groups) {
    InterferenceMatrix fs = restrict_rows(f, S);
    NetworkGraph t;
    try {
      t = identify_tree(fs, {S.begin(), S.end()});
    } catch (const Error&) {
      continue;  // not a tree after all; leave these hosts to the ring phase
    }
    if (!realizes(t, fs)) continue;
    if (t.underlay_ids().empty()) {
      // a two-host group comes back as a bare edge; give it a router so the
      // attachment phase has somewhere to graft
      auto hosts = t.overlay_ids();
      int w = t.max_node_id() + 1;
      t.add_node(w, NodeKind::Underlay);
      t.remove_edge(hosts[0], hosts[1]);
      t.add_edge(hosts[0], w);
      t.add_edge(hosts[1], w);
    }
    PendingTree pt;
    pt.tree = std::move(t);
    pt.hosts = S;
    pt.anchor = *S.begin();
    std::set<int> removed = S;
    removed.erase(pt.anchor);
    f_cur = drop_hosts(f_cur, removed);
    std::vector<int> next_o;
    for (int o : o_cur)
      if (!removed.count(o)) next_o.push_back(o);
    o_cur = std::move(next_o);
    trees.push_back(std::move(pt));
  }

  // phase three: the non-tree remainder, then graft each tree at its anchor.
  // The ring routers are renumbered above every original host id first:
  // recovered on the reduced host set, their ids could otherwise collide
  // with hosts that only come back during grafting.
  NetworkGraph ghat = identify_rings(f_cur, o_cur).graph;
  {
    int base = ghat.max_node_id() + 1;
    for (auto [s, d] : f.pairs()) base = std::max({base, s + 1, d + 1});
    std::map<int, int> remap;
    ghat = remap_tree_internals(ghat, base, remap);
  }
  for (const auto& pt : trees) ghat = splice_tree(ghat, pt, f);

  auto score = [&f](const NetworkGraph& g) -> std::size_t {
    try {
      InterferenceMatrix got = interference_from_topology(g);
      return got.pairs() == f.pairs() ? hamming_distance(got, f)
                                      : f.size() * f.size();
    } catch (const Error&) {
      return f.size() * f.size();
    }
  };

  GeneralResult res;
  res.graph = std::move(ghat);
  res.f_distance = score(res.graph);

  // The sibling test can misfire when equal-length route ties all bend away
  // from one link (even-length cycles do this), peeling off a pair that was
  // never a cherry and corrupting the remainder. Guard against that by also
  // scoring the undecomposed reconstruction and keeping the better fit.
  if (!trees.empty() && res.f_distance != 0) {
    try {
      NetworkGraph flat = identify_rings(f, overlays).graph;
      std::size_t d = score(flat);
      if (d < res.f_distance) {
        res.graph = std::move(flat);
        res.f_distance = d;
      }
    } catch (const Error&) {
      // keep the phased result
    }
  }
  return res;
}

}  // namespace itopo
