#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "itopo/error.hpp"
#include "itopo/ilp.hpp"

namespace itopo {

namespace {

struct Search {
  const InterferenceMatrix& f;
  std::size_t k;        // overlay count, ids 1..k
  std::size_t n_hat;    // room for nodes 1..n_hat
  std::size_t budget;
  std::size_t steps = 0;
  bool out_of_budget = false;

  std::vector<std::vector<int>> paths;      // assigned, per tunnel row
  std::map<std::pair<int, int>, std::vector<std::size_t>> on_link;
  std::map<std::pair<int, int>, int> edge_use;  // undirected multiplicity
  std::size_t edge_count = 0;
  std::size_t used_underlays = 0;           // ids k+1 .. k+used are live
  std::map<int, int> attach;                // host -> its one router

  bool have_best = false;
  std::vector<std::vector<int>> best_paths;
  std::size_t best_edges = 0;

  explicit Search(const InterferenceMatrix& fm, std::size_t k_,
                  std::size_t n, std::size_t b)
      : f(fm), k(k_), n_hat(n), budget(b) {}

  bool tick() {
    if (++steps > budget) {
      if (!have_best)
        fail(Errc::TimeBudgetExceeded,
             "exact solve ran out of steps before any solution");
      out_of_budget = true;
    }
    return !out_of_budget;
  }

  static std::pair<int, int> und(int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  // add/remove one hop's bookkeeping
  void push_hop(std::size_t t, int a, int b) {
    on_link[{a, b}].push_back(t);
    if (++edge_use[und(a, b)] == 1) ++edge_count;
  }
  void pop_hop(int a, int b) {
    on_link[{a, b}].pop_back();
    if (--edge_use[und(a, b)] == 0) --edge_count;
  }

  // does directed link (a,b) clash with a tunnel t must avoid?
  bool clash(std::size_t t, int a, int b) const {
    auto it = on_link.find({a, b});
    if (it == on_link.end()) return false;
    for (std::size_t u : it->second)
      if (!f.at(t, u)) return true;
    return false;
  }

  // all candidate simple paths for tunnel t under the current state, sorted
  // shortest first so incumbents arrive early
  std::vector<std::vector<int>> candidates(std::size_t t) {
    auto [s, d] = f.pairs()[t];
    std::vector<std::vector<int>> out;
    std::vector<int> cur{s};
    std::set<int> in_path{s};
    const std::size_t saved_used = used_underlays;

    // routers reachable next: every live underlay not already on the path,
    // plus (first-use symmetry) the single next fresh id
    auto step_options = [&]() {
      std::vector<int> opts;
      for (std::size_t u = 0; u < used_underlays; ++u) {
        int id = static_cast<int>(k + 1 + u);
        if (!in_path.count(id)) opts.push_back(id);
      }
      if (k + 1 + used_underlays <= n_hat)
        opts.push_back(static_cast<int>(k + 1 + used_underlays));
      return opts;
    };

    auto dfs = [&](auto&& self, int at) -> void {
      if (!tick()) return;
      // close the path: the hop into d must honour d's fixed router
      if (cur.size() >= 2) {
        auto itd = attach.find(d);
        if (itd == attach.end() || itd->second == at) {
          if (!clash(t, at, d)) {
            auto p = cur;
            p.push_back(d);
            out.push_back(std::move(p));
          }
        }
      }
      for (int nxt : step_options()) {
        if (clash(t, at, nxt)) continue;
        bool fresh = static_cast<std::size_t>(nxt) == k + 1 + used_underlays;
        cur.push_back(nxt);
        in_path.insert(nxt);
        if (fresh) ++used_underlays;
        self(self, nxt);
        if (fresh) --used_underlays;
        in_path.erase(nxt);
        cur.pop_back();
      }
    };

    // first hop leaves s through its fixed router if one exists
    auto push_first = [&](int r) {
      if (clash(t, s, r)) return;
      bool fresh = static_cast<std::size_t>(r) == k + 1 + used_underlays;
      cur.push_back(r);
      in_path.insert(r);
      if (fresh) ++used_underlays;
      dfs(dfs, r);
      if (fresh) --used_underlays;
      in_path.erase(r);
      cur.pop_back();
    };
    auto its = attach.find(s);
    if (its != attach.end()) {
      push_first(its->second);
    } else {
      for (int r : step_options()) push_first(r);
    }
    used_underlays = saved_used;
    std::stable_sort(out.begin(), out.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                       if (a.size() != b.size()) return a.size() < b.size();
                       return a < b;
                     });
    return out;
  }

  // all pairwise obligations of t against already-assigned tunnels
  bool consistent(std::size_t t, const std::vector<int>& path) const {
    std::set<std::pair<int, int>> links;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      links.insert({path[i], path[i + 1]});
    for (std::size_t u = 0; u < t; ++u) {
      bool share = false;
      const auto& p = paths[u];
      for (std::size_t i = 0; i + 1 < p.size() && !share; ++i)
        if (links.count({p[i], p[i + 1]})) share = true;
      if (share != static_cast<bool>(f.at(t, u))) return false;
    }
    return true;
  }

  void assign(std::size_t t) {
    if (!tick()) return;
    const std::size_t L = f.size();
    if (t == L) {
      if (!have_best || edge_count < best_edges) {
        have_best = true;
        best_edges = edge_count;
        best_paths = paths;
      }
      return;
    }
    if (have_best && edge_count >= best_edges) return;
    auto [s, d] = f.pairs()[t];
    for (const auto& p : candidates(t)) {
      if (out_of_budget) return;
      if (!consistent(t, p)) continue;

      // apply
      const std::size_t saved_used = used_underlays;
      const bool had_s = attach.count(s), had_d = attach.count(d);
      if (!had_s) attach[s] = p[1];
      if (!had_d) attach[d] = p[p.size() - 2];
      for (int n : p)
        if (n > static_cast<int>(k))
          used_underlays =
              std::max(used_underlays, static_cast<std::size_t>(n) - k);
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        push_hop(t, p[i], p[i + 1]);
      paths.push_back(p);

      bool fits = !have_best || edge_count < best_edges;
      if (fits) assign(t + 1);

      // undo
      paths.pop_back();
      for (std::size_t i = p.size() - 1; i-- > 0;)
        pop_hop(p[i], p[i + 1]);
      if (!had_s) attach.erase(s);
      if (!had_d) attach.erase(d);
      used_underlays = saved_used;
      if (out_of_budget) return;
    }
  }
};

}  // namespace

SolveResult solve_exact_small(const InterferenceMatrix& f, std::size_t n_hat,
                              const SolveLimits& limits) {
  if (n_hat > limits.max_nodes)
    fail(Errc::BudgetExceeded,
         "instance wants " + std::to_string(n_hat) + " nodes but the solver " +
             "is fenced at " + std::to_string(limits.max_nodes) +
             "; export the model instead");
  if (f.size() > limits.max_tunnels)
    fail(Errc::BudgetExceeded,
         "instance has " + std::to_string(f.size()) +
             " tunnels but the solver is fenced at " +
             std::to_string(limits.max_tunnels) + "; export the model instead");
  std::set<int> overlays;
  for (auto [s, d] : f.pairs()) {
    overlays.insert(s);
    overlays.insert(d);
  }
  const std::size_t k = overlays.size();
  for (int o : overlays)
    if (o < 1 || static_cast<std::size_t>(o) > k)
      fail(Errc::IndexMismatch,
           "matrix must use canonical overlay ids 1..k, saw " +
               std::to_string(o));

  SolveResult res;
  if (k == 0) {
    res.optimal = true;
    return res;
  }
  if (n_hat < k + 1)
    fail(Errc::BudgetTooSmall, "need at least " + std::to_string(k + 1) +
                                   " nodes, got " + std::to_string(n_hat));
  if (k == 1) {  // no tunnels; the host still needs its one edge
    res.graph.add_node(1, NodeKind::Overlay);
    res.graph.add_node(2, NodeKind::Underlay);
    res.graph.add_edge(1, 2);
    res.optimal = true;
    res.objective = 1;
    return res;
  }

  Search srch(f, k, n_hat, limits.step_budget);
  srch.assign(0);
  if (!srch.have_best)
    fail(Errc::Infeasible, "no network with " + std::to_string(n_hat) +
                               " nodes realizes this matrix");

  for (std::size_t o = 1; o <= k; ++o)
    res.graph.add_node(static_cast<int>(o), NodeKind::Overlay);
  std::set<int> used;
  for (const auto& p : srch.best_paths)
    for (int n : p) used.insert(n);
  for (int n : used)
    if (n > static_cast<int>(k)) res.graph.add_node(n, NodeKind::Underlay);
  std::set<std::pair<int, int>> edges;
  for (const auto& p : srch.best_paths)
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      edges.insert(Search::und(p[i], p[i + 1]));
  for (auto [a, b] : edges) res.graph.add_edge(a, b);

  for (std::size_t t = 0; t < f.size(); ++t) {
    Tunnel tn;
    tn.src = f.pairs()[t].first;
    tn.dst = f.pairs()[t].second;
    tn.nodes = srch.best_paths[t];
    for (std::size_t i = 0; i + 1 < tn.nodes.size(); ++i)
      tn.links.emplace_back(tn.nodes[i], tn.nodes[i + 1]);
    res.tunnels.push_back(std::move(tn));
  }
  res.optimal = !srch.out_of_budget;
  res.objective = srch.best_edges;
  return res;
}

SolveResult solve_exact_small(const IlpModel& m, const SolveLimits& limits) {
  // The required-sharing constraints are named meet_<a>_<b> with 1-based
  // tunnel indices, one per interfering pair, so they carry the whole matrix.
  InterferenceMatrix f(m.pairs);
  for (const auto& c : m.constraints) {
    if (c.name.rfind("meet_", 0) != 0) continue;
    std::size_t a = 0, b = 0;
    if (std::sscanf(c.name.c_str(), "meet_%zu_%zu", &a, &b) != 2 || a == 0 ||
        b == 0 || a > f.size() || b > f.size())
      fail(Errc::IoError, "unparsable constraint name " + c.name);
    f.at(a - 1, b - 1) = 1;
    f.at(b - 1, a - 1) = 1;
  }
  return solve_exact_small(f, m.n_hat, limits);
}

}  // namespace itopo
