#include <algorithm>
#include <numeric>

#include "itopo/error.hpp"
#include "itopo/recovery.hpp"

namespace itopo {

namespace {

InterferenceMatrix take_rows(const InterferenceMatrix& f,
                             std::vector<std::size_t> rows,
                             std::vector<std::pair<int, int>> new_pairs) {
  // rows[i] is the old row landing at new row i; new_pairs must be sorted
  InterferenceMatrix out(std::move(new_pairs));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows.size(); ++b)
      out.at(a, b) = f.at(rows[a], rows[b]);
  return out;
}

}  // namespace

InterferenceMatrix restrict_rows(const InterferenceMatrix& f,
                                 const std::set<int>& keep) {
  std::vector<std::size_t> rows;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t r = 0; r < f.size(); ++r) {
    auto [s, d] = f.pairs()[r];
    if (keep.count(s) && keep.count(d)) {
      rows.push_back(r);
      pairs.push_back({s, d});
    }
  }
  return take_rows(f, std::move(rows), std::move(pairs));
}

InterferenceMatrix drop_hosts(const InterferenceMatrix& f,
                              const std::set<int>& remove) {
  std::vector<std::size_t> rows;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t r = 0; r < f.size(); ++r) {
    auto [s, d] = f.pairs()[r];
    if (!remove.count(s) && !remove.count(d)) {
      rows.push_back(r);
      pairs.push_back({s, d});
    }
  }
  return take_rows(f, std::move(rows), std::move(pairs));
}

InterferenceMatrix relabel_host(const InterferenceMatrix& f, int old_id,
                                int new_id) {
  if (old_id == new_id) return f;
  for (auto [s, d] : f.pairs())
    if (s == new_id || d == new_id)
      fail(Errc::IndexMismatch,
           "relabel target " + std::to_string(new_id) + " already in use");
  std::vector<std::pair<int, int>> pairs = f.pairs();
  for (auto& [s, d] : pairs) {
    if (s == old_id) s = new_id;
    if (d == old_id) d = new_id;
  }
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });
  std::vector<std::pair<int, int>> sorted;
  for (std::size_t r : order) sorted.push_back(pairs[r]);
  return take_rows(f, std::move(order), std::move(sorted));
}

bool are_siblings(const InterferenceMatrix& f, int i, int j) {
  if (i == j) return true;
  // one directional pass: the tunnel a->b may interfere only with tunnels
  // that start at a or end at b
  auto pass = [&](int a, int b) {
    std::size_t k = f.row_of(a, b);
    for (std::size_t l = 0; l < f.size(); ++l) {
      if (!f.at(k, l)) continue;
      auto [l1, ln] = f.pairs()[l];
      if (l1 != a && ln != b) return false;
    }
    return true;
  };
  return pass(i, j) && pass(j, i);
}

NetworkGraph identify_tree(const InterferenceMatrix& f,
                           const std::vector<int>& overlays) {
  NetworkGraph ghat;
  for (int o : overlays) ghat.add_node(o, NodeKind::Overlay);

  std::vector<int> o_cur = overlays;
  std::sort(o_cur.begin(), o_cur.end());
  InterferenceMatrix f_cur = f;
  int next_id = o_cur.empty() ? 1 : o_cur.back() + 1;

  // A foreign pattern can slip through the peeling loop and come out as some
  // tree anyway, so every exit reverifies the reconstruction against f.
  auto finish = [&f](NetworkGraph g) {
    if (f.size() > 0) {
      bool ok = false;
      try {
        InterferenceMatrix got = interference_from_topology(g);
        ok = got.pairs() == f.pairs() && hamming_distance(got, f) == 0;
      } catch (const Error&) {
      }
      if (!ok)
        fail(Errc::NotATree,
             "reconstruction does not reproduce the interference pattern; "
             "pattern is not a tree");
    }
    return g;
  };

  while (true) {
    if (o_cur.size() <= 1) return finish(std::move(ghat));
    if (o_cur.size() == 2) {
      ghat.add_edge(o_cur[0], o_cur[1]);
      return finish(std::move(ghat));
    }

    // busiest tunnel; its source's sibling group peels off next
    std::size_t kstar = 0, best = 0;
    for (std::size_t k = 0; k < f_cur.size(); ++k) {
      std::size_t s = 0;
      for (std::size_t l = 0; l < f_cur.size(); ++l) s += f_cur.at(k, l);
      if (s > best) {
        best = s;
        kstar = k;
      }
    }
    const int k1 = f_cur.pairs()[kstar].first;

    std::vector<int> group;
    for (int i : o_cur)
      if (are_siblings(f_cur, k1, i)) group.push_back(i);
    if (group.size() < 2)
      fail(Errc::NotATree, "sibling group of host " + std::to_string(k1) +
                               " makes no progress; pattern is not a tree");

    const int parent = next_id++;
    ghat.add_node(parent, NodeKind::Underlay);
    for (int i : group) ghat.add_edge(parent, i);

    std::set<int> removed;
    for (int i : group)
      if (i != k1) removed.insert(i);
    f_cur = drop_hosts(f_cur, removed);
    f_cur = relabel_host(f_cur, k1, parent);

    std::vector<int> next_o;
    for (int i : o_cur)
      if (!removed.count(i) && i != k1) next_o.push_back(i);
    next_o.push_back(parent);
    std::sort(next_o.begin(), next_o.end());
    o_cur = std::move(next_o);
  }
}

}  // namespace itopo
