#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "itopo/graph.hpp"
#include "itopo/interference.hpp"

namespace itopo {

// Integer program for the smallest network consistent with an interference
// matrix.  Node ids are 1..n_hat with overlays first, so the matrix must be
// over canonical overlay ids 1..k.  Variables:
//   x_i_j     undirected edge {i,j} used by anything          (binary)
//   xt_l_i_j  tunnel l routed over directed link (i,j)        (binary)
//   u_l_i     visit-order potential for loop elimination      (continuous >= 0)
//   y_k_l_i_j tunnels k and l both on directed link (i,j)     (binary)
// Constraint families: edge-use OR linking, overlay degree one, per-tunnel
// flow conservation, order potentials against loops, forbidden sharing for
// non-interfering pairs, and required sharing for interfering pairs.
struct IlpModel {
  std::size_t n_hat = 0;
  std::size_t n_overlay = 0;
  std::vector<std::pair<int, int>> pairs;  // tunnel rows

  std::vector<std::string> var_names;            // column order
  std::vector<std::size_t> binary_vars;          // indices into var_names
  std::vector<std::size_t> objective;            // x vars, coefficient 1

  struct Constraint {
    std::string name;
    std::vector<std::pair<double, std::size_t>> terms;
    char rel = '<';  // '<' means <=, '>' means >=, '=' equality
    double rhs = 0.0;
  };
  std::vector<Constraint> constraints;

  std::map<std::string, std::size_t> lookup;  // name -> column

  std::size_t var_index(const std::string& name) const;  // throws if absent
};

// n_hat is the node budget |N| of the model (overlays plus allowed routers);
// throws BudgetTooSmall below k + 1.
IlpModel build_ilp_model(const InterferenceMatrix& f, std::size_t n_hat);

// CPLEX LP text, deterministic ordering, long lines wrapped.
std::string export_lp(const IlpModel& m);

// Parses the subset of the LP format produced by export_lp (round-trips).
IlpModel parse_lp(const std::string& text);

// True when the models have identical variables, objectives and constraints
// (names, coefficients, senses, right-hand sides).
bool same_structure(const IlpModel& a, const IlpModel& b);

// Reads "<name> <value>" lines (as printed by common solvers), keeps the
// edges with x > 0.5, rebuilds each tunnel's path from its xt variables, and
// drops nodes no tunnel touches.
RecoveredGraph import_solution(const IlpModel& m, const std::string& text);

struct SolveResult {
  NetworkGraph graph;
  std::vector<Tunnel> tunnels;
  bool optimal = false;
  std::size_t objective = 0;  // undirected edge count
};

// Instance-size fence plus the deterministic work budget for the in-process
// solver; anything bigger belongs to the export / external-solver workflow.
struct SolveLimits {
  std::size_t max_nodes = 8;
  std::size_t max_tunnels = 12;
  std::size_t step_budget = 20000000;
};

// Self-contained exact solver for small instances: depth-first assignment of
// a simple path per tunnel with interference consistency enforced at every
// step, first-use symmetry breaking over underlay ids, and branch-and-bound
// on the edge count.  Paths run host -> routers -> host, so any network it
// returns honours the degree-one host rule.  Throws BudgetExceeded when the
// instance is over the limits, Infeasible when the search space is exhausted
// without a solution, TimeBudgetExceeded when the step budget runs out
// before any solution is found; a budget hit after an incumbent was found
// returns it with optimal == false.
SolveResult solve_exact_small(const InterferenceMatrix& f, std::size_t n_hat,
                              const SolveLimits& limits = {});

// Same search driven by a parsed model: the matrix is rebuilt from the
// model's required-sharing constraints and the node budget from its
// variables.
SolveResult solve_exact_small(const IlpModel& m, const SolveLimits& limits = {});

}  // namespace itopo
