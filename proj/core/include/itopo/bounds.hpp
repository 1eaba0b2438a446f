#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "itopo/graph.hpp"
#include "itopo/interference.hpp"

namespace itopo {

// Constructive upper-bound witness: builds a network plus explicit tunnel
// paths whose pairwise shared-directed-link pattern reproduces the given
// matrix.  Each interfering pair gets its own segment on a backbone line; the
// per-tunnel segments are then stitched into loop-free left-to-right paths,
// reusing a stitch edge only when everyone on it is pairwise interfering.
// Faithful whenever the matrix is realizable by some network (in particular,
// same-source and same-destination rows must interfere).
RecoveredGraph feasible_graph(const InterferenceMatrix& f);

// Closed-form bound on the edge count of the construction above:
// |E_F| + 2 L |E_F| + |O| + 2 L, where E_F is the set of interfering pairs.
std::size_t upper_bound(const InterferenceMatrix& f);

enum class CoverMode { Exact, Greedy };

struct CliqueCover {
  std::vector<std::vector<std::size_t>> cliques;  // tunnel rows, each sorted
  bool exact = false;  // true when minimality is certified
  std::size_t size() const { return cliques.size(); }
};

// Smallest set of cliques covering every edge of the interference graph.
// Greedy grows a maximal clique around each yet-uncovered edge; Exact runs
// branch and bound over the maximal cliques containing a chosen uncovered
// edge and proves optimality.  Exact refuses graphs with more than
// edge_budget edges (BudgetExceeded).  Either way the result is
// irredundant: every clique covers at least one edge no other clique has.
CliqueCover min_edge_clique_cover(const InterferenceGraph& gf, CoverMode mode,
                                  std::size_t edge_budget = 40);

// {"cliques": [[..],..], "size": n, "exact": bool}
std::string cover_to_json(const CliqueCover& cover);

// ceil(C / 2): no network with fewer undirected links can produce this
// matrix.  Exact mode uses the minimum cover size C.  Greedy mode instead
// packs edges no single clique could cover together -- that count also
// lower-bounds C, so the result stays a true bound without the exact search.
std::size_t lower_bound(const InterferenceMatrix& f, CoverMode mode,
                        std::size_t edge_budget = 40);

struct LinkWitness {
  std::pair<int, int> link;  // directed (a, b)
  bool witnessed = false;
  std::pair<std::size_t, std::size_t> pair{0, 0};  // tunnel rows if witnessed
};

struct UniqueIntersectionReport {
  // Every directed link of the graph (both orientations of every edge),
  // sorted; witnessed means some tunnel pair meets at that link and nowhere
  // else, which makes the link irreplaceable.
  std::vector<LinkWitness> witnesses;
  // Undirected edges {a, b} (a < b) with a witness in neither direction;
  // each can be deleted without changing the matrix.
  std::vector<std::pair<int, int>> witness_free;
  // True iff every directed link is witnessed; certifies that the graph is
  // minimal and that the clique-cover lower bound is tight (C = 2|E|).
  bool holds = false;
};

UniqueIntersectionReport check_unique_intersection_condition(
    const NetworkGraph& g, const std::vector<Tunnel>& tunnels);

struct VerifyReport {
  bool feasible = false;
  std::vector<std::string> violations;  // tagged human-readable findings
};

// Structural audit of a candidate: hosts have degree one, every tunnel is a
// simple connected path with the right endpoints, non-interfering rows never
// share a directed link, interfering rows share at least one.
VerifyReport verify_solution(const InterferenceMatrix& f,
                             const RecoveredGraph& candidate);

// Does shortest-path routing on g reproduce exactly this matrix (same
// ordered pairs, same entries)?
bool realizes(const NetworkGraph& g, const InterferenceMatrix& f);

}  // namespace itopo
