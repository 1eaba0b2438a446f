// itopo: topology inference from tunnel interference, as a pipeline of small
// file-to-file commands.  Every command is deterministic given its --seed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itopo/bounds.hpp"
#include "itopo/error.hpp"
#include "itopo/evaluation.hpp"
#include "itopo/graph.hpp"
#include "itopo/ilp.hpp"
#include "itopo/interference.hpp"
#include "itopo/recovery.hpp"
#include "itopo/traffic.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) itopo::fail(itopo::Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "-" or empty means stdout
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) itopo::fail(itopo::Errc::IoError, "cannot open " + path +
                                                  " for writing");
  out << text;
  if (!out) itopo::fail(itopo::Errc::IoError, "write failed: " + path);
}

std::vector<int> overlays_of(const itopo::InterferenceMatrix& f) {
  std::set<int> o;
  for (auto [s, d] : f.pairs()) {
    o.insert(s);
    o.insert(d);
  }
  return {o.begin(), o.end()};
}

// the variable names in a solver printout carry the node budget
std::size_t nodes_in_solution(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int max_node = 0;
  while (std::getline(in, line)) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    int a = 0, b = 0, c = 0, d = 0;
    if (std::sscanf(name.c_str(), "x_%d_%d", &a, &b) == 2)
      max_node = std::max({max_node, a, b});
    else if (std::sscanf(name.c_str(), "xt_%d_%d_%d", &a, &b, &c) == 3)
      max_node = std::max({max_node, b, c});
    else if (std::sscanf(name.c_str(), "y_%d_%d_%d_%d", &a, &b, &c, &d) == 4)
      max_node = std::max({max_node, c, d});
  }
  if (max_node <= 0)
    itopo::fail(itopo::Errc::IoError,
                "solution file names no x/xt/y variables");
  return static_cast<std::size_t>(max_node);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal network topology inference from tunnel interference"};
  app.require_subcommand(1);

  // generate
  auto* cmd_gen = app.add_subcommand(
      "generate", "sample a random host/router network");
  std::size_t gen_n = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  cmd_gen->add_option("--n", gen_n, "random graph size before reduction")
      ->required();
  cmd_gen->add_option("--seed", gen_seed, "rng seed")->capture_default_str();
  cmd_gen->add_option("-o,--output", gen_out, "graph file (default stdout)");

  // fmatrix
  auto* cmd_fm = app.add_subcommand(
      "fmatrix", "ground-truth interference matrix of a graph");
  std::string fm_graph, fm_out;
  cmd_fm->add_option("-g,--graph", fm_graph, "input graph file")->required();
  cmd_fm->add_option("-o,--output", fm_out, "matrix csv (default stdout)");

  // infer-f
  auto* cmd_inf = app.add_subcommand(
      "infer-f", "estimate the interference matrix from probe traffic");
  std::string inf_graph, inf_out;
  itopo::TrafficConfig inf_cfg;
  std::uint64_t inf_seed = 0;
  cmd_inf->add_option("-g,--graph", inf_graph, "input graph file")->required();
  cmd_inf->add_option("--rate", inf_cfg.rate, "probe rate per tunnel")
      ->capture_default_str();
  cmd_inf->add_option("--threshold", inf_cfg.threshold,
                      "interference decision threshold")
      ->capture_default_str();
  cmd_inf->add_option("--horizon", inf_cfg.horizon, "simulated time")
      ->capture_default_str();
  cmd_inf->add_option("--min-samples", inf_cfg.min_samples,
                      "required samples per tunnel")
      ->capture_default_str();
  cmd_inf->add_option("--seed", inf_seed, "rng seed")->capture_default_str();
  cmd_inf->add_option("-o,--output", inf_out, "matrix csv (default stdout)");

  // recover
  auto* cmd_rec = app.add_subcommand(
      "recover", "rebuild a topology from an interference matrix");
  std::string rec_algo, rec_f, rec_out;
  cmd_rec
      ->add_option("--algo", rec_algo, "one of tree|ring|rings|general")
      ->required()
      ->check(CLI::IsMember({"tree", "ring", "rings", "general"}));
  cmd_rec->add_option("-f,--fmatrix", rec_f, "interference csv")->required();
  cmd_rec->add_option("-o,--output", rec_out, "graph file (default stdout)");

  // bounds
  auto* cmd_bnd = app.add_subcommand(
      "bounds", "edge-count bounds implied by an interference matrix");
  std::string bnd_f, bnd_graph;
  bool bnd_exact = false;
  cmd_bnd->add_option("-f,--fmatrix", bnd_f, "interference csv")->required();
  cmd_bnd->add_flag("--exact", bnd_exact,
                    "exact clique cover instead of greedy");
  cmd_bnd->add_option(
      "-g,--graph", bnd_graph,
      "also check the per-link uniqueness condition on this graph");

  // ilp-export
  auto* cmd_ile = app.add_subcommand(
      "ilp-export", "write the reconstruction integer program in LP format");
  std::string ile_f, ile_out;
  std::size_t ile_nodes = 0;
  cmd_ile->add_option("-f,--fmatrix", ile_f, "interference csv")->required();
  cmd_ile->add_option("--nodes", ile_nodes, "node budget of the model")
      ->required();
  cmd_ile->add_option("-o,--output", ile_out, "lp file (default stdout)");

  // ilp-solve
  auto* cmd_ils = app.add_subcommand(
      "ilp-solve", "solve the reconstruction program in-process (toy sizes)");
  std::string ils_f, ils_out;
  std::size_t ils_nodes = 0;
  cmd_ils->add_option("-f,--fmatrix", ils_f, "interference csv")->required();
  cmd_ils->add_option("--nodes", ils_nodes, "node budget")->required();
  cmd_ils->add_option("-o,--output", ils_out,
                      "write the recovered graph here as well");

  // verify
  auto* cmd_ver = app.add_subcommand(
      "verify", "check an external solver's solution against the matrix");
  std::string ver_f, ver_sol;
  cmd_ver->add_option("-f,--fmatrix", ver_f, "interference csv")->required();
  cmd_ver->add_option("-s,--solution", ver_sol, "solver output file")
      ->required();

  // evaluate
  auto* cmd_eval = app.add_subcommand(
      "evaluate", "run the random-network recovery study");
  std::string eval_cfg_path, eval_out;
  std::size_t eval_jobs = 0;
  cmd_eval->add_option("-c,--config", eval_cfg_path, "experiment config file")
      ->required();
  cmd_eval->add_option("-o,--output", eval_out, "report csv (default stdout)");
  cmd_eval->add_option("--jobs", eval_jobs, "worker threads (overrides config)");

  // export-dot
  auto* cmd_dot = app.add_subcommand("export-dot", "graph to graphviz dot");
  std::string dot_graph, dot_out;
  cmd_dot->add_option("-g,--graph", dot_graph, "input graph file")->required();
  cmd_dot->add_option("-o,--output", dot_out, "dot file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_gen->parsed()) {
      itopo::ExperimentConfig cfg;
      itopo::NetworkGraph g =
          itopo::generate_random_network(gen_n, cfg, gen_seed);
      emit(gen_out, itopo::write_graph(g));
    } else if (cmd_fm->parsed()) {
      itopo::NetworkGraph g = itopo::load_graph_file(fm_graph);
      emit(fm_out, itopo::write_fmatrix(itopo::interference_from_topology(g)));
    } else if (cmd_inf->parsed()) {
      itopo::NetworkGraph g = itopo::load_graph_file(inf_graph);
      itopo::InterferenceMatrix f =
          itopo::infer_interference_matrix(g, inf_cfg, inf_seed);
      emit(inf_out, itopo::write_fmatrix(f));
    } else if (cmd_rec->parsed()) {
      itopo::InterferenceMatrix f = itopo::load_fmatrix_file(rec_f);
      std::vector<int> overlays = overlays_of(f);
      itopo::NetworkGraph ghat;
      if (rec_algo == "tree") {
        ghat = itopo::identify_tree(f, overlays);
      } else if (rec_algo == "ring") {
        ghat = itopo::identify_ring(f, overlays);
      } else if (rec_algo == "rings") {
        itopo::RingsResult r = itopo::identify_rings(f, overlays);
        std::cout << "f_mismatch=" << r.f_mismatch << "\n";
        ghat = std::move(r.graph);
      } else {
        itopo::GeneralResult r = itopo::identify_general(f, overlays);
        std::cout << "f_distance=" << r.f_distance << "\n";
        ghat = std::move(r.graph);
      }
      emit(rec_out, itopo::write_graph(ghat));
    } else if (cmd_bnd->parsed()) {
      itopo::InterferenceMatrix f = itopo::load_fmatrix_file(bnd_f);
      itopo::CoverMode mode =
          bnd_exact ? itopo::CoverMode::Exact : itopo::CoverMode::Greedy;
      itopo::CliqueCover cover =
          itopo::min_edge_clique_cover(itopo::build_interference_graph(f), mode);
      std::cout << "upper_bound=" << itopo::upper_bound(f) << "\n";
      std::cout << "cover_size=" << cover.size() << " ("
                << (cover.exact ? "exact" : "greedy") << ")\n";
      std::cout << "lower_bound=" << itopo::lower_bound(f, mode) << "\n";
      std::cout << "feasible_edges=" << itopo::feasible_graph(f).graph.num_edges()
                << "\n";
      if (!bnd_graph.empty()) {
        itopo::NetworkGraph g = itopo::load_graph_file(bnd_graph);
        itopo::UniqueIntersectionReport rep =
            itopo::check_unique_intersection_condition(
                g, itopo::enumerate_tunnels(g));
        std::cout << "condition_holds=" << (rep.holds ? "true" : "false")
                  << "\n";
        std::cout << "witness_free=";
        for (std::size_t i = 0; i < rep.witness_free.size(); ++i) {
          auto [a, b] = rep.witness_free[i];
          std::cout << (i ? " " : "") << "{" << a << "," << b << "}";
        }
        std::cout << "\n";
      }
    } else if (cmd_ile->parsed()) {
      itopo::InterferenceMatrix f = itopo::load_fmatrix_file(ile_f);
      emit(ile_out, itopo::export_lp(itopo::build_ilp_model(f, ile_nodes)));
    } else if (cmd_ils->parsed()) {
      itopo::InterferenceMatrix f = itopo::load_fmatrix_file(ils_f);
      itopo::SolveResult res = itopo::solve_exact_small(f, ils_nodes);
      std::cout << "objective=" << res.objective << "\n"
                << "optimal=" << (res.optimal ? "true" : "false") << "\n";
      if (!ils_out.empty()) emit(ils_out, itopo::write_graph(res.graph));
    } else if (cmd_ver->parsed()) {
      itopo::InterferenceMatrix f = itopo::load_fmatrix_file(ver_f);
      std::string sol_text = slurp(ver_sol);
      itopo::IlpModel model =
          itopo::build_ilp_model(f, nodes_in_solution(sol_text));
      itopo::RecoveredGraph sol = itopo::import_solution(model, sol_text);
      itopo::VerifyReport rep = itopo::verify_solution(f, sol);
      if (rep.feasible) {
        std::cout << "feasible\n";
      } else {
        for (const std::string& v : rep.violations)
          std::cout << "violation: " << v << "\n";
        return 1;
      }
    } else if (cmd_eval->parsed()) {
      itopo::ExperimentConfig cfg =
          itopo::parse_experiment_config(slurp(eval_cfg_path));
      if (eval_jobs > 0) cfg.jobs = eval_jobs;
      itopo::ExperimentReport rep = itopo::run_experiment(cfg);
      emit(eval_out, itopo::report_to_csv(rep));
      std::cout << itopo::report_summary(rep);
    } else if (cmd_dot->parsed()) {
      itopo::NetworkGraph g = itopo::load_graph_file(dot_graph);
      emit(dot_out, itopo::to_dot(g));
    }
  } catch (const itopo::Error& e) {
    std::cerr << "error: " << itopo::errc_name(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
