#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "itopo/graph.hpp"
#include "itopo/interference.hpp"

namespace itopo {

struct TrafficConfig {
  double rate = 0.3;               // packets per service time, per tunnel
  double horizon = 1e4;            // sending window, in service-time units
  std::size_t min_samples = 1000;  // required per-tunnel sample count
  // Slope cutoff for declaring interference.  At the default rate the
  // fitted slope sits below ~0.04 for non-sharing pairs and above ~0.2
  // whenever a directed link is shared, so 0.12 splits the gap.
  double threshold = 0.12;
};

// One delivered packet on one tunnel of a measured pair: the send instant,
// the raw end-to-end delay in service-time units, and the in-flight counts
// of both tunnels at the send instant (own count excludes the packet
// itself).
struct ProbeSample {
  double time = 0.0;
  double delay = 0.0;
  int h_own = 0;
  int h_other = 0;
};

// Everything observed while loading one tunnel pair in isolation.  `rate`
// records the arrival rate the trace was collected at.
struct TrafficTrace {
  std::pair<int, int> pair_a{0, 0};  // (src, dst) labels of tunnel a
  std::pair<int, int> pair_b{0, 0};
  double rate = 1.0;
  std::vector<ProbeSample> samples_a;
  std::vector<ProbeSample> samples_b;
};

// Event-driven FIFO simulation of exactly two tunnels: each emits an
// independent Poisson packet stream, every directed link serves packets one
// at a time with unit deterministic service, shared links form one queue.
// Packets sent before `horizon` produce samples; the run continues past the
// horizon until they drain.  Deterministic in (g, a, b, rates, seed).
TrafficTrace simulate_pair(const NetworkGraph& g, const Tunnel& a,
                           const Tunnel& b, double rate_a, double rate_b,
                           double horizon, std::uint64_t seed);

// simulate_pair at the configured rate, then insist both sides collected at
// least cfg.min_samples samples (SimulationHorizonTooShort otherwise).
TrafficTrace simulate_traffic(const NetworkGraph& g, const Tunnel& a,
                              const Tunnel& b, const TrafficConfig& cfg,
                              std::uint64_t seed);

// Least-squares fit of delay ~ intercept + b*h_own + alpha*h_other over the
// trace; returns alpha, the extra delay attributable to each in-flight
// packet of the other tunnel after controlling for own load.  Near zero
// when the paths are disjoint; approaches the shared service time (1) the
// more of the other tunnel's queueing the probe packets sit behind, and
// never exceeds it asymptotically.  On a trace where delay is exactly
// h_own + c*h_other the fit returns c exactly.  Throws DegenerateRegressor
// when the trace is empty, h_other is constant, or the two counts are
// collinear, all of which leave the slope undefined.
double regress_alpha(const std::vector<ProbeSample>& samples);

// Measures every unordered tunnel pair in isolation (independent seed
// streams derived from `seed`), regresses both directions, and marks the
// pair interfering iff the larger slope reaches cfg.threshold.
InterferenceMatrix infer_interference_matrix(const NetworkGraph& g,
                                             const TrafficConfig& cfg,
                                             std::uint64_t seed);

}  // namespace itopo
