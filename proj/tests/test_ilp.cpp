#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "itopo/bounds.hpp"
#include "itopo/error.hpp"
#include "itopo/ilp.hpp"
#include "support/fixtures.hpp"

using namespace itopo;
using namespace itopo::testing;

namespace {

// Formats a solver answer file for a solved instance: every chosen edge and
// every tunnel hop as "<name> 1" lines, the style import_solution reads.
std::string solution_text(const SolveResult& res) {
  std::ostringstream out;
  for (auto [a, b] : res.graph.edges())
    out << "x_" << a << "_" << b << " 1\n";
  for (std::size_t l = 0; l < res.tunnels.size(); ++l)
    for (auto [i, j] : res.tunnels[l].links)
      out << "xt_" << (l + 1) << "_" << i << "_" << j << " 1\n";
  return out.str();
}

InterferenceMatrix two_host_chain_matrix() {
  return interference_from_topology(
      build_network({{1, 3}, {3, 2}}, {1, 2}));
}

}  // namespace

TEST_CASE("model shape for a 3-host star") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  IlpModel m = build_ilp_model(f, 4);
  CHECK(m.n_hat == 4);
  CHECK(m.n_overlay == 3);
  CHECK(m.pairs.size() == 6);
  CHECK(m.var_names.size() == m.lookup.size());
  // Edge variable between a host and the candidate router exists; the
  // objective charges exactly the undirected edge variables.
  CHECK_NOTHROW(m.var_index("x_1_4"));
  CHECK(error_code_of([&] { m.var_index("x_9_9"); }) == Errc::IndexMismatch);
  for (std::size_t col : m.objective) {
    CHECK(m.var_names[col].rfind("x_", 0) == 0);
  }
  for (std::size_t col : m.binary_vars) CHECK(col < m.var_names.size());
}

TEST_CASE("node budgets below k+1 are rejected") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  CHECK(error_code_of([&] { build_ilp_model(f, 3); }) == Errc::BudgetTooSmall);
  CHECK_NOTHROW(build_ilp_model(f, 4));
}

TEST_CASE("lp text structure and round trip") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  IlpModel m = build_ilp_model(f, 5);
  std::string lp = export_lp(m);
  // A '\' comment header, then the objective sense.
  CHECK(lp.rfind("\\", 0) == 0);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Bounds") != std::string::npos);
  CHECK(lp.find("Binary") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
  std::istringstream lines(lp);
  std::string line;
  while (std::getline(lines, line)) CHECK(line.size() <= 255);

  IlpModel back = parse_lp(lp);
  CHECK(same_structure(m, back));
  CHECK(export_lp(back) == lp);

  // Any structural drift must be caught.
  IlpModel other = build_ilp_model(f, 6);
  CHECK_FALSE(same_structure(m, other));
}

TEST_CASE("tiny instances solve to the known optimum") {
  // Three hosts in a star: three edges, provably minimal, certified.
  InterferenceMatrix f = interference_from_topology(make_star3());
  SolveResult res = solve_exact_small(f, 4);
  CHECK(res.optimal);
  CHECK(res.objective == 3);
  CHECK(res.graph.num_edges() == 3);
  CHECK(interference_from_tunnels(res.tunnels) == f);
  CHECK(verify_solution(f, {res.graph, res.tunnels}).feasible);

  // Two hosts: the minimal chain host-router-host.
  InterferenceMatrix f2 = two_host_chain_matrix();
  SolveResult res2 = solve_exact_small(f2, 3);
  CHECK(res2.optimal);
  CHECK(res2.objective == 2);
  CHECK(res2.graph.num_nodes() == 3);
  CHECK(interference_from_tunnels(res2.tunnels) == f2);
}

TEST_CASE("solver honours a surplus node budget") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  SolveResult res = solve_exact_small(f, 6);
  CHECK(res.optimal);
  CHECK(res.objective == 3);  // spare routers stay unused
}

TEST_CASE("solver limits fence instance size") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  SolveLimits small;
  small.max_nodes = 3;
  CHECK(error_code_of([&] { solve_exact_small(f, 4, small); }) ==
        Errc::BudgetExceeded);

  // Five hosts mean 20 tunnels, over the default tunnel cap.
  InterferenceMatrix f5 = interference_from_topology(make_ring(5, 1));
  CHECK(error_code_of([&] { solve_exact_small(f5, 10); }) ==
        Errc::BudgetExceeded);
}

TEST_CASE("exhausted step budget before any incumbent is an error") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  SolveLimits tiny;
  tiny.step_budget = 5;
  CHECK(error_code_of([&] { solve_exact_small(f, 4, tiny); }) ==
        Errc::TimeBudgetExceeded);
}

TEST_CASE("contradictory matrices are infeasible") {
  // Same-source tunnels always share the host's single uplink, so an
  // all-zero off-diagonal over 3 hosts admits no network at all.
  InterferenceMatrix f = interference_from_topology(make_star3());
  for (std::size_t k = 0; k < f.size(); ++k)
    for (std::size_t l = 0; l < f.size(); ++l)
      if (k != l) f.at(k, l) = 0;
  CHECK(error_code_of([&] { solve_exact_small(f, 5); }) == Errc::Infeasible);
}

TEST_CASE("solution import round trip") {
  InterferenceMatrix f = interference_from_topology(make_star3());
  IlpModel m = build_ilp_model(f, 4);
  SolveResult res = solve_exact_small(f, 4);
  RecoveredGraph back = import_solution(m, solution_text(res));
  CHECK(back.graph == res.graph);
  CHECK(back.tunnels.size() == res.tunnels.size());
  CHECK(verify_solution(f, back).feasible);
}

TEST_CASE("model-driven solve matches the matrix-driven one") {
  InterferenceMatrix f = two_host_chain_matrix();
  IlpModel m = parse_lp(export_lp(build_ilp_model(f, 3)));
  SolveResult direct = solve_exact_small(f, 3);
  SolveResult via_model = solve_exact_small(m);
  CHECK(via_model.optimal == direct.optimal);
  CHECK(via_model.objective == direct.objective);
  CHECK(via_model.graph.num_edges() == direct.graph.num_edges());
}

TEST_CASE("grid matrix exports a 12-node model that round trips") {
  InterferenceMatrix f = interference_from_topology(make_grid());
  IlpModel m = build_ilp_model(f, 12);
  CHECK(m.n_hat == 12);
  CHECK(m.pairs.size() == 30);
  IlpModel back = parse_lp(export_lp(m));
  CHECK(same_structure(m, back));
}
