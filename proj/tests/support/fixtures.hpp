#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "itopo/error.hpp"
#include "itopo/graph.hpp"

namespace itopo::testing {

// Random tree in which every interior node has total degree >= 3 and every
// leaf is a host; canonical ids (hosts 1..k).  Grown from a 3-leaf star by
// seeded leaf additions and interior splits.
NetworkGraph make_minimal_tree(std::size_t leaves, std::uint64_t seed);

// Inject 1..4 random degree-2 routers into edges of a tree (the inverse of
// the splice reduction); host ids are preserved.
NetworkGraph make_nonminimal_tree(const NetworkGraph& minimal,
                                  std::uint64_t seed);

// Cycle of k routers, one host per router, host ids 1..k scattered around
// the cycle in seeded random order.  host_order receives the ground-truth
// cyclic sequence when non-null.
NetworkGraph make_ring(std::size_t k, std::uint64_t seed,
                       std::vector<int>* host_order = nullptr);

// The cyclic host order of a recovered ring: walks the router cycle and
// reports each router's pendant host.  Throws if the graph is not a ring of
// one-host routers.
std::vector<int> ring_host_order(const NetworkGraph& g);

// Same sequence up to rotation and/or reflection.
bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b);

// Host-pinned canonical encoding of a tree: AHU strings rooted at the tree
// center, leaves labelled by host id.  Equal encodings <=> isomorphic via a
// host-identity-preserving mapping.
std::string tree_encoding(const NetworkGraph& tree);

// Sorted list of sorted host groups, one per router that has host children.
std::vector<std::vector<int>> sibling_partition(const NetworkGraph& g);

// 3x2 router grid (ids 7..12) with one host per router (ids 1..6); the
// layout is frozen so that routes include (1,8,7,4) and the edges {7,8} and
// {11,12} exist.  13 edges, 12 nodes.
NetworkGraph make_grid();

// Three hosts on one hub router.
NetworkGraph make_star3();

// Seven-leaf tree with sibling groups {5,6,7} (deepest), {3,4}, {1,2}:
// router 8 holds 1,2 and the chain down to router 10 holding 5,6,7.
NetworkGraph make_deep_tree7();

// Two fused router cycles sharing edge r1-r3, hosts 1..6; p(1) has router
// neighbours p(2), p(3), p(4).
NetworkGraph make_fused_cycles();

// Runs a shell command, captures combined stdout (stderr separate file if
// needed by caller), returns exit status.
struct CmdResult {
  int status = -1;
  std::string out;
};
CmdResult run_cmd(const std::string& cmd);

// Invokes fn and reports the library error code it throws; throws itself if
// fn completes or throws anything else.
template <typename Fn>
Errc error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an itopo::Error");
}

}  // namespace itopo::testing
