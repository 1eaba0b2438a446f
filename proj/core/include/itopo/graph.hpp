#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace itopo {

enum class NodeKind { Overlay, Underlay };

// Undirected multigraph-free network graph.  Overlay nodes are the end hosts
// (tunnel endpoints); underlay nodes are the interior routers.  The container
// itself is permissive -- structural rules (host degree 1, connectivity, no
// host-host links) are enforced by validate_network so that the recovery
// algorithms can build graphs incrementally through invalid intermediates.
class NetworkGraph {
 public:
  void add_node(int id, NodeKind kind);
  void remove_node(int id);  // also drops incident edges
  bool has_node(int id) const { return nodes_.count(id) != 0; }
  NodeKind kind(int id) const;
  void set_kind(int id, NodeKind kind);

  void add_edge(int a, int b);  // throws on self loop / duplicate / unknown node
  void remove_edge(int a, int b);
  bool has_edge(int a, int b) const;

  const std::vector<int>& neighbors(int id) const;  // sorted ascending

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edge_count_; }
  int max_node_id() const;

  std::vector<int> node_ids() const;      // sorted
  std::vector<int> overlay_ids() const;   // sorted
  std::vector<int> underlay_ids() const;  // sorted
  std::vector<std::pair<int, int>> edges() const;  // sorted, a < b per pair

  bool connected() const;

  bool operator==(const NetworkGraph& o) const {
    return nodes_ == o.nodes_ && adj_ == o.adj_;
  }

 private:
  std::map<int, NodeKind> nodes_;
  std::map<int, std::vector<int>> adj_;
  std::size_t edge_count_ = 0;
};

// Checks host degree == 1, no host-host edges, and connectivity; throws Error.
void validate_network(const NetworkGraph& g);

// Construct from an edge list plus the set of overlay ids, then validate.
// Nodes not listed as overlay are underlay.
NetworkGraph build_network(const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int>& overlays);

// Among all shortest src->dst paths, the one whose node id sequence is
// lexicographically smallest.  Returned as the full node sequence.
std::vector<int> shortest_path_route(const NetworkGraph& g, int src, int dst);

struct Tunnel {
  int src = 0;
  int dst = 0;
  std::vector<int> nodes;                   // src ... dst
  std::vector<std::pair<int, int>> links;   // directed hops along the path

  bool operator==(const Tunnel&) const = default;
};

// One tunnel per ordered overlay pair (s, d), s != d, rows sorted by (s, d).
std::vector<Tunnel> enumerate_tunnels(const NetworkGraph& g);

// A candidate topology together with an explicit routing: one tunnel path
// per ordered host pair, in the same row order as the matrix it answers to.
// The paths need not be shortest paths of the graph.
struct RecoveredGraph {
  NetworkGraph graph;
  std::vector<Tunnel> tunnels;
};

// Repeatedly removes redundant interior structure: degree-<=2 routers with no
// attached host are dropped or spliced out, and a router whose only role is
// chaining a single host onto another router is collapsed.  The result is the
// smallest graph in the class that routes identically.
NetworkGraph reduce_to_minimal(const NetworkGraph& g);

// Relabel so overlays become 1..k and underlays k+1..k+m, each preserving the
// relative order of the old ids.  Pure; returns the relabelled copy.
NetworkGraph canonical_form(const NetworkGraph& g);

// --- serialization (see docs/formats.md for the grammar) ---

std::string write_graph(const NetworkGraph& g);
NetworkGraph read_graph(const std::string& text);
NetworkGraph load_graph_file(const std::string& path);
void save_graph_file(const NetworkGraph& g, const std::string& path);

std::string to_dot(const NetworkGraph& g);

}  // namespace itopo
