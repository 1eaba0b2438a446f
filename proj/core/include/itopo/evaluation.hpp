#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "itopo/graph.hpp"

namespace itopo {

enum class RecoveryAlgo { Tree, Ring, Rings, General };

const char* recovery_algo_name(RecoveryAlgo a);

// Knobs for the random-network study.  edge_prob == 0 means "use 2/n", the
// default density that keeps the expected degree constant across sizes.
struct ExperimentConfig {
  std::vector<std::size_t> n_values;
  double edge_prob = 0.0;
  double overlay_fraction = 0.8;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  RecoveryAlgo recovery = RecoveryAlgo::General;
  std::size_t jobs = 1;
};

// "key = value" lines, '#' comments.  Keys: n (list, comma or space
// separated), edge_prob, overlay_fraction, trials, seed, recovery
// (tree|ring|rings|general).  Unknown keys and out-of-range values are
// IoError.
ExperimentConfig parse_experiment_config(const std::string& text);

// One random instance: sample an Erdős–Rényi graph on n nodes, keep the
// largest connected component, hang hosts off ceil(overlay_fraction * m) of
// the m surviving routers chosen uniformly, strip redundant interior
// structure, and relabel canonically.  Deterministic given (n, cfg, seed).
// Samples that collapse below every-router-degree->= 3 are retried on
// derived seeds a bounded number of times, then reported as
// DegenerateSample.
NetworkGraph generate_random_network(std::size_t n, const ExperimentConfig& cfg,
                                     std::uint64_t seed);

enum class DistanceMode { Exact, Heuristic };

// Minimum number of edge insertions plus deletions that turns g1 into a
// graph identical to g2 under the best type-respecting node bijection.
// Hosts may be matched only with hosts; either graph is padded with isolated
// nodes, and matching a real node with padding is free (only its edges
// count).  Exact is a branch-and-bound over partial matchings and refuses
// graphs above exact_node_budget nodes (BudgetExceeded); Heuristic matches
// by degree profile, refines with pairwise swaps, and always reports >= the
// exact value.
std::size_t edit_distance(const NetworkGraph& g1, const NetworkGraph& g2,
                          DistanceMode mode,
                          std::size_t exact_node_budget = 12);

struct TrialRecord {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  RecoveryAlgo algorithm = RecoveryAlgo::General;
  long long edit_distance = -1;  // -1 marks a failed trial
  long long f_hamming = -1;      // ditto
  double runtime_ms = 0.0;
  std::string error;  // what() of the failure, empty on success
};

struct AggregateRow {
  std::size_t n = 0;
  std::size_t completed = 0;
  std::size_t failed = 0;
  double mean_distance = 0.0;
  double std_distance = 0.0;  // sample standard deviation
};

struct ExperimentReport {
  std::vector<TrialRecord> records;     // trials-per-n blocks, trial order
  std::vector<AggregateRow> aggregates;  // one row per n value
};

// Runs cfg.trials trials for every n: generate, route, recover with the
// selected algorithm, score against the generator (Exact edit distance when
// both graphs fit the exact budget, Heuristic otherwise).  A trial that
// throws is recorded as failed, never aborts the run.  Trials execute on
// cfg.jobs threads; every trial draws from its own seed stream, so the
// report is identical whatever the thread count.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// CSV with header n,seed,algorithm,edit_distance,f_hamming,runtime_ms.
std::string report_to_csv(const ExperimentReport& r);

// Human-readable per-n summary (mean / std / failure counts).
std::string report_summary(const ExperimentReport& r);

}  // namespace itopo
