#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "itopo/error.hpp"
#include "itopo/graph.hpp"
#include "itopo/interference.hpp"
#include "support/fixtures.hpp"

using namespace itopo;
using namespace itopo::testing;

TEST_CASE("build_network assembles nodes, kinds and sorted adjacency") {
  NetworkGraph g = make_star3();
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 3);
  CHECK(g.kind(1) == NodeKind::Overlay);
  CHECK(g.kind(4) == NodeKind::Underlay);
  CHECK(g.overlay_ids() == std::vector<int>{1, 2, 3});
  CHECK(g.underlay_ids() == std::vector<int>{4});
  CHECK(g.neighbors(4) == std::vector<int>{1, 2, 3});
  CHECK(g.edges() ==
        std::vector<std::pair<int, int>>{{1, 4}, {2, 4}, {3, 4}});
  CHECK(g.max_node_id() == 4);
  CHECK(g.connected());
}

TEST_CASE("edge insertion guards") {
  NetworkGraph g;
  g.add_node(1, NodeKind::Overlay);
  g.add_node(2, NodeKind::Underlay);
  g.add_edge(1, 2);
  CHECK(error_code_of([&] { g.add_edge(1, 1); }) == Errc::SelfLoop);
  CHECK(error_code_of([&] { g.add_edge(2, 1); }) == Errc::DuplicateEdge);
  CHECK_THROWS_AS(g.add_edge(1, 99), Error);
  g.remove_edge(1, 2);
  CHECK(g.num_edges() == 0);
  CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("remove_node drops incident edges") {
  NetworkGraph g = make_star3();
  g.remove_node(4);
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 0);
  CHECK_FALSE(g.has_node(4));
}

TEST_CASE("validate_network enforces the structural rules") {
  // Host with two edges.
  NetworkGraph a;
  a.add_node(1, NodeKind::Overlay);
  a.add_node(2, NodeKind::Underlay);
  a.add_node(3, NodeKind::Underlay);
  a.add_edge(1, 2);
  a.add_edge(1, 3);
  a.add_edge(2, 3);
  CHECK(error_code_of([&] { validate_network(a); }) ==
        Errc::OverlayDegreeViolation);

  // Two components.
  NetworkGraph b;
  for (int i = 1; i <= 4; ++i)
    b.add_node(i, i <= 2 ? NodeKind::Overlay : NodeKind::Underlay);
  b.add_edge(1, 3);
  b.add_edge(2, 4);
  CHECK(error_code_of([&] { validate_network(b); }) == Errc::Disconnected);

  CHECK_NOTHROW(validate_network(make_grid()));
  CHECK_NOTHROW(validate_network(make_deep_tree7()));
  CHECK_NOTHROW(validate_network(make_fused_cycles()));
}

TEST_CASE("shortest routes are lexicographically smallest among equals") {
  // Two equal-length router corridors between hosts 1 and 2; ids force the
  // choice of router 4 over router 5.
  NetworkGraph g = build_network(
      {{1, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}, {6, 2}}, {1, 2});
  CHECK(shortest_path_route(g, 1, 2) == std::vector<int>{1, 3, 4, 6, 2});
  CHECK(shortest_path_route(g, 2, 1) == std::vector<int>{2, 6, 4, 3, 1});

  NetworkGraph grid = make_grid();
  CHECK(shortest_path_route(grid, 1, 4) == std::vector<int>{1, 8, 7, 4});
}

TEST_CASE("route between hosts on adjacent ring routers has three hops") {
  std::vector<int> order;
  NetworkGraph g = make_ring(6, 42, &order);
  // order[0] and order[1] hang off adjacent routers.
  auto r = shortest_path_route(g, order[0], order[1]);
  CHECK(r.size() == 4);
  CHECK(r.front() == order[0]);
  CHECK(r.back() == order[1]);
}

TEST_CASE("unreachable routes are reported") {
  NetworkGraph g;
  g.add_node(1, NodeKind::Overlay);
  g.add_node(2, NodeKind::Overlay);
  g.add_node(3, NodeKind::Underlay);
  g.add_node(4, NodeKind::Underlay);
  g.add_edge(1, 3);
  g.add_edge(2, 4);
  CHECK(error_code_of([&] { shortest_path_route(g, 1, 2); }) ==
        Errc::Unreachable);
}

TEST_CASE("enumerate_tunnels yields k(k-1) sorted rows with directed links") {
  auto check_count = [](const NetworkGraph& g, std::size_t k) {
    auto ts = enumerate_tunnels(g);
    CHECK(ts.size() == k * (k - 1));
    for (std::size_t i = 1; i < ts.size(); ++i)
      CHECK(std::make_pair(ts[i - 1].src, ts[i - 1].dst) <
            std::make_pair(ts[i].src, ts[i].dst));
    for (const Tunnel& t : ts) {
      CHECK(t.nodes.front() == t.src);
      CHECK(t.nodes.back() == t.dst);
      CHECK(t.links.size() + 1 == t.nodes.size());
      for (std::size_t i = 0; i < t.links.size(); ++i) {
        CHECK(t.links[i].first == t.nodes[i]);
        CHECK(t.links[i].second == t.nodes[i + 1]);
      }
    }
  };
  check_count(make_grid(), 6);
  check_count(make_deep_tree7(), 7);
  NetworkGraph two = build_network({{1, 3}, {3, 2}}, {1, 2});
  check_count(two, 2);
}

TEST_CASE("reduce_to_minimal splices out chains of relay routers") {
  NetworkGraph g =
      build_network({{1, 3}, {3, 4}, {4, 5}, {5, 2}}, {1, 2});
  NetworkGraph r = reduce_to_minimal(g);
  CHECK(r.num_nodes() == 3);
  CHECK(r.num_edges() == 2);
  CHECK(r.overlay_ids() == std::vector<int>{1, 2});
  int router = r.underlay_ids().at(0);
  CHECK(r.has_edge(1, router));
  CHECK(r.has_edge(2, router));
}

TEST_CASE("reduce_to_minimal undoes injected degree-2 routers exactly") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    NetworkGraph t = make_minimal_tree(4 + seed % 9, seed);
    NetworkGraph fat = make_nonminimal_tree(t, seed * 31 + 1);
    CHECK(fat.num_nodes() > t.num_nodes());
    NetworkGraph back = canonical_form(reduce_to_minimal(fat));
    CHECK(tree_encoding(back) == tree_encoding(t));
    // Interference is untouched by the extra relays.
    CHECK(interference_from_topology(fat) == interference_from_topology(t));
  }
}

TEST_CASE("reduce_to_minimal keeps already-minimal graphs intact") {
  for (const NetworkGraph& g :
       {make_grid(), make_deep_tree7(), make_fused_cycles()}) {
    CHECK(reduce_to_minimal(g) == g);
  }
}

TEST_CASE("canonical_form packs ids and preserves relative order") {
  NetworkGraph g = build_network(
      {{2, 40}, {5, 40}, {40, 50}, {9, 50}, {7, 50}}, {2, 5, 7, 9});
  NetworkGraph c = canonical_form(g);
  CHECK(c.overlay_ids() == std::vector<int>{1, 2, 3, 4});
  CHECK(c.underlay_ids() == std::vector<int>{5, 6});
  // 2->1, 5->2, 7->3, 9->4, 40->5, 50->6.
  CHECK(c.has_edge(1, 5));
  CHECK(c.has_edge(2, 5));
  CHECK(c.has_edge(5, 6));
  CHECK(c.has_edge(3, 6));
  CHECK(c.has_edge(4, 6));
}

TEST_CASE("graph text round trip") {
  for (const NetworkGraph& g :
       {make_grid(), make_star3(), make_deep_tree7(), make_fused_cycles()}) {
    CHECK(read_graph(write_graph(g)) == g);
  }
  NetworkGraph tree = make_minimal_tree(9, 77);
  std::string path = "tg_roundtrip.graph";
  save_graph_file(tree, path);
  CHECK(load_graph_file(path) == tree);
  std::remove(path.c_str());
  CHECK(error_code_of([&] { load_graph_file("no/such/file.graph"); }) ==
        Errc::IoError);
  CHECK_THROWS_AS(read_graph("nonsense ["), Error);
}

TEST_CASE("dot export is deterministic and names every node") {
  NetworkGraph g = make_grid();
  std::string d1 = to_dot(g);
  CHECK(d1 == to_dot(g));
  CHECK(d1.find("graph") != std::string::npos);
  for (int id : g.node_ids())
    CHECK(d1.find(std::to_string(id)) != std::string::npos);
}

TEST_CASE("minimal tree generator emits valid canonical minimal trees") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::size_t leaves = 4 + seed;
    NetworkGraph t = make_minimal_tree(leaves, seed);
    CHECK_NOTHROW(validate_network(t));
    CHECK(t.num_edges() + 1 == t.num_nodes());
    auto hosts = t.overlay_ids();
    CHECK(hosts.size() == leaves);
    CHECK(hosts.front() == 1);
    CHECK(hosts.back() == static_cast<int>(leaves));
    for (int r : t.underlay_ids())
      CHECK(t.neighbors(r).size() >= 3);
    // Generator is deterministic.
    CHECK(make_minimal_tree(leaves, seed) == t);
  }
}
