#pragma once

#include <set>
#include <vector>

#include "itopo/graph.hpp"
#include "itopo/interference.hpp"

namespace itopo {

// --- submatrix helpers used throughout recovery ---

// Keep only tunnels whose endpoints both lie in keep.
InterferenceMatrix restrict_rows(const InterferenceMatrix& f,
                                 const std::set<int>& keep);

// Drop every tunnel that starts or ends at a host in remove.
InterferenceMatrix drop_hosts(const InterferenceMatrix& f,
                              const std::set<int>& remove);

// Substitute one host id in the row index (rows are re-sorted); the new id
// must not already name a host.
InterferenceMatrix relabel_host(const InterferenceMatrix& f, int old_id,
                                int new_id);

// Sibling test: hosts i and j hang off the same router iff the tunnel i->j
// interferes only with tunnels that start at i or end at j, and the tunnel
// j->i interferes only with tunnels that start at j or end at i.
bool are_siblings(const InterferenceMatrix& f, int i, int j);

// Tree recovery.  Repeatedly finds the sibling group of the busiest tunnel's
// source, gives the group a parent node, collapses the group onto that
// parent in the matrix, and recurses until one or two nodes remain.  Two
// remaining nodes are joined directly (for two genuine hosts this yields the
// degenerate host-host edge).  Throws NotATree when a sibling group of size
// one makes no progress, which happens iff the matrix is not a tree pattern.
NetworkGraph identify_tree(const InterferenceMatrix& f,
                           const std::vector<int>& overlays);

// Ring recovery for at least five hosts (smaller rings are ambiguous or not
// minimal; throws TooFewOverlays).  For each host the two least-interfering
// outgoing tunnels point at the neighbouring hosts; parents get canonical
// ids max(overlays) + rank.  Throws NotARing when the assembled parents do
// not close into one simple cycle.
NetworkGraph identify_ring(const InterferenceMatrix& f,
                           const std::vector<int>& overlays);

// All hosts whose router neighbours host i's router, for graphs whose
// routers sit on cycles: seeded with the two least-interfering outgoing
// tunnels, then extended by tunnels that avoid everything already found.
std::vector<int> all_neighbors(const InterferenceMatrix& f,
                               const std::vector<int>& overlays, int i);

// Multi-ring recovery: like ring recovery but a router may have any number
// of router neighbours, found via all_neighbors.  Best-effort — instead of
// throwing on imperfect inputs it reports how far the recovered topology's
// interference pattern is from the input (0 = exact reproduction).
struct RingsResult {
  NetworkGraph graph;
  std::size_t f_mismatch = 0;  // hamming distance vs the input matrix
};

RingsResult identify_rings(const InterferenceMatrix& f,
                           const std::vector<int>& overlays);

// General recovery: extracts mutually-consistent sibling sets (candidate
// trees), recovers each as a tree, reduces the matrix to one anchor host per
// tree, recovers the remainder as rings, then splices every tree back at its
// anchor choosing the attachment that best reproduces the input matrix.
// Best-effort heuristic; f_distance is the residual mismatch (0 when the
// input pattern is reproduced exactly).
struct GeneralResult {
  NetworkGraph graph;
  std::size_t f_distance = 0;
};

GeneralResult identify_general(const InterferenceMatrix& f,
                               const std::vector<int>& overlays);

}  // namespace itopo
