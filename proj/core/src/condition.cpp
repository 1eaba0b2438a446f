#include <algorithm>
#include <map>
#include <set>

#include "itopo/bounds.hpp"
#include "itopo/error.hpp"

namespace itopo {

namespace {

// number of directed links two tunnels have in common; early exit at 2
std::size_t shared_count(const std::vector<std::pair<int, int>>& a,
                         const std::vector<std::pair<int, int>>& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      if (++c >= 2) return c;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

}  // namespace

UniqueIntersectionReport check_unique_intersection_condition(
    const NetworkGraph& g, const std::vector<Tunnel>& ts) {
  std::vector<std::vector<std::pair<int, int>>> sorted(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    sorted[k] = ts[k].links;
    std::sort(sorted[k].begin(), sorted[k].end());
  }
  std::map<std::pair<int, int>, std::vector<std::size_t>> on_link;
  for (std::size_t k = 0; k < ts.size(); ++k)
    for (auto lk : ts[k].links) on_link[lk].push_back(k);

  UniqueIntersectionReport rep;
  rep.holds = true;
  std::set<std::pair<int, int>> witnessed_dirs;
  for (auto [a, b] : g.edges()) {
    for (auto lk : {std::make_pair(a, b), std::make_pair(b, a)}) {
      LinkWitness w;
      w.link = lk;
      auto it = on_link.find(lk);
      if (it != on_link.end()) {
        const auto& users = it->second;
        for (std::size_t i = 0; i < users.size() && !w.witnessed; ++i)
          for (std::size_t j = i + 1; j < users.size() && !w.witnessed; ++j)
            if (shared_count(sorted[users[i]], sorted[users[j]]) == 1) {
              w.witnessed = true;  // they meet at lk and nowhere else
              w.pair = {users[i], users[j]};
            }
      }
      if (w.witnessed) witnessed_dirs.insert(lk);
      rep.holds = rep.holds && w.witnessed;
      rep.witnesses.push_back(w);
    }
    if (!witnessed_dirs.count({a, b}) && !witnessed_dirs.count({b, a}))
      rep.witness_free.emplace_back(a, b);
  }
  return rep;
}

VerifyReport verify_solution(const InterferenceMatrix& f,
                             const RecoveredGraph& cand) {
  const auto& ts = cand.tunnels;
  if (ts.size() != f.size())
    fail(Errc::IndexMismatch, "candidate routes " + std::to_string(ts.size()) +
                                  " tunnels, matrix has " +
                                  std::to_string(f.size()));
  for (std::size_t k = 0; k < ts.size(); ++k)
    if (std::make_pair(ts[k].src, ts[k].dst) != f.pairs()[k])
      fail(Errc::IndexMismatch, "tunnel row " + std::to_string(k) +
                                    " does not match the matrix pair order");

  VerifyReport rep;
  auto flag = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  const NetworkGraph& g = cand.graph;
  for (int o : g.overlay_ids()) {
    const auto& nb = g.neighbors(o);
    if (nb.size() != 1)
      flag("host-degree: host " + std::to_string(o) + " has " +
           std::to_string(nb.size()) + " edges, wants exactly 1");
  }

  std::vector<std::vector<std::pair<int, int>>> sorted(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const Tunnel& t = ts[k];
    std::string tag = "path[" + std::to_string(t.src) + ">" +
                      std::to_string(t.dst) + "]: ";
    if (t.nodes.size() < 2 || t.nodes.front() != t.src ||
        t.nodes.back() != t.dst)
      flag(tag + "does not run from its source to its destination");
    std::set<int> seen(t.nodes.begin(), t.nodes.end());
    if (seen.size() != t.nodes.size()) flag(tag + "revisits a node");
    for (std::size_t i = 0; i + 1 < t.nodes.size(); ++i)
      if (!g.has_node(t.nodes[i]) || !g.has_node(t.nodes[i + 1]) ||
          !g.has_edge(t.nodes[i], t.nodes[i + 1]))
        flag(tag + "hop " + std::to_string(t.nodes[i]) + "->" +
             std::to_string(t.nodes[i + 1]) + " is not an edge of the graph");
    sorted[k] = t.links;
    std::sort(sorted[k].begin(), sorted[k].end());
  }

  for (std::size_t k = 0; k < ts.size(); ++k)
    for (std::size_t l = k + 1; l < ts.size(); ++l) {
      bool meet = shared_count(sorted[k], sorted[l]) > 0;
      std::string pk = std::to_string(ts[k].src) + ">" +
                       std::to_string(ts[k].dst);
      std::string pl = std::to_string(ts[l].src) + ">" +
                       std::to_string(ts[l].dst);
      if (f.at(k, l) && !meet)
        flag("must-share: interfering tunnels " + pk + " and " + pl +
             " have no common directed link");
      if (!f.at(k, l) && meet)
        flag("no-share: non-interfering tunnels " + pk + " and " + pl +
             " share a directed link");
    }

  rep.feasible = rep.violations.empty();
  return rep;
}

bool realizes(const NetworkGraph& g, const InterferenceMatrix& f) {
  InterferenceMatrix got = interference_from_topology(g);
  return got.pairs() == f.pairs() && got == f;
}

}  // namespace itopo
