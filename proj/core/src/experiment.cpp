#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "itopo/error.hpp"
#include "itopo/evaluation.hpp"
#include "itopo/interference.hpp"
#include "itopo/recovery.hpp"
#include "itopo/rng.hpp"

namespace itopo {

const char* recovery_algo_name(RecoveryAlgo a) {
  switch (a) {
    case RecoveryAlgo::Tree:
      return "tree";
    case RecoveryAlgo::Ring:
      return "ring";
    case RecoveryAlgo::Rings:
      return "rings";
    case RecoveryAlgo::General:
      return "general";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(Errc::IoError, "config: bad number '" + v + "' for " + key);
  }
}

std::uint64_t parse_uint(const std::string& v, const std::string& key) {
  try {
    // stoull would happily wrap "-3"; only digits are acceptable here.
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument(v);
    std::size_t pos = 0;
    unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    fail(Errc::IoError, "config: bad integer '" + v + "' for " + key);
  }
}

// interference distance between what the recovered graph would produce and
// what the trial handed the algorithm; incomparable output counts as all-wrong
std::size_t f_diagnostic(const NetworkGraph& ghat,
                         const InterferenceMatrix& f) {
  try {
    InterferenceMatrix got = interference_from_topology(ghat);
    return got.pairs() == f.pairs() ? hamming_distance(got, f)
                                    : f.size() * f.size();
  } catch (const Error&) {
    return f.size() * f.size();
  }
}

struct Trial {
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

TrialRecord run_trial(const ExperimentConfig& cfg, const Trial& t) {
  TrialRecord rec;
  rec.n = t.n;
  rec.seed = t.seed;
  rec.algorithm = cfg.recovery;
  try {
    NetworkGraph g = generate_random_network(t.n, cfg, t.seed);
    InterferenceMatrix f = interference_from_topology(g);
    std::vector<int> overlays = g.overlay_ids();

    auto t0 = std::chrono::steady_clock::now();
    NetworkGraph ghat;
    long long fdiag = -1;
    switch (cfg.recovery) {
      case RecoveryAlgo::Tree:
        ghat = identify_tree(f, overlays);
        break;
      case RecoveryAlgo::Ring:
        ghat = identify_ring(f, overlays);
        break;
      case RecoveryAlgo::Rings: {
        RingsResult r = identify_rings(f, overlays);
        ghat = std::move(r.graph);
        fdiag = static_cast<long long>(r.f_mismatch);
        break;
      }
      case RecoveryAlgo::General: {
        GeneralResult r = identify_general(f, overlays);
        ghat = std::move(r.graph);
        fdiag = static_cast<long long>(r.f_distance);
        break;
      }
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (fdiag < 0) fdiag = static_cast<long long>(f_diagnostic(ghat, f));
    rec.f_hamming = fdiag;

    constexpr std::size_t kExactBudget = 12;
    DistanceMode mode =
        g.num_nodes() <= kExactBudget && ghat.num_nodes() <= kExactBudget
            ? DistanceMode::Exact
            : DistanceMode::Heuristic;
    rec.edit_distance =
        static_cast<long long>(edit_distance(g, ghat, mode, kExactBudget));
  } catch (const Error& e) {
    rec.edit_distance = -1;
    rec.f_hamming = -1;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::IoError, "config line " + std::to_string(lineno) +
                              ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "n") {
      for (char& c : val)
        if (c == ',') c = ' ';
      std::istringstream vs(val);
      std::string item;
      cfg.n_values.clear();
      while (vs >> item)
        cfg.n_values.push_back(parse_uint(item, "n"));
      if (cfg.n_values.empty())
        fail(Errc::IoError, "config: n needs at least one value");
      have_n = true;
    } else if (key == "edge_prob") {
      cfg.edge_prob = parse_real(val, key);
      if (cfg.edge_prob <= 0.0 || cfg.edge_prob > 1.0)
        fail(Errc::IoError, "config: edge_prob must lie in (0, 1]");
    } else if (key == "overlay_fraction") {
      cfg.overlay_fraction = parse_real(val, key);
      if (cfg.overlay_fraction <= 0.0 || cfg.overlay_fraction > 1.0)
        fail(Errc::IoError, "config: overlay_fraction must lie in (0, 1]");
    } else if (key == "trials") {
      cfg.trials = parse_uint(val, key);
      if (cfg.trials == 0) fail(Errc::IoError, "config: trials must be >= 1");
    } else if (key == "seed") {
      cfg.seed = parse_uint(val, key);
    } else if (key == "jobs") {
      cfg.jobs = parse_uint(val, key);
    } else if (key == "recovery") {
      if (val == "tree")
        cfg.recovery = RecoveryAlgo::Tree;
      else if (val == "ring")
        cfg.recovery = RecoveryAlgo::Ring;
      else if (val == "rings")
        cfg.recovery = RecoveryAlgo::Rings;
      else if (val == "general")
        cfg.recovery = RecoveryAlgo::General;
      else
        fail(Errc::IoError, "config: unknown recovery '" + val + "'");
    } else {
      fail(Errc::IoError, "config: unknown key '" + key + "'");
    }
  }
  if (!have_n) fail(Errc::IoError, "config: missing required key n");
  return cfg;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty())
    fail(Errc::IndexMismatch, "experiment needs at least one n value");
  if (cfg.trials == 0)
    fail(Errc::IndexMismatch, "experiment needs at least one trial");

  std::vector<Trial> trials;
  for (std::size_t n : cfg.n_values)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Trial tr;
      tr.n = n;
      // a private stream per trial, stable whatever the thread count
      tr.seed = Rng::mix64(Rng::mix64(cfg.seed) ^
                           Rng::mix64((static_cast<std::uint64_t>(n) << 32) |
                                      static_cast<std::uint64_t>(t)));
      trials.push_back(tr);
    }

  ExperimentReport rep;
  rep.records.resize(trials.size());
  const std::size_t jobs =
      std::max<std::size_t>(1, std::min(cfg.jobs, trials.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < trials.size(); ++i)
      rep.records[i] = run_trial(cfg, trials[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < trials.size();
           i = next.fetch_add(1))
        rep.records[i] = run_trial(cfg, trials[i]);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t n : cfg.n_values) {
    AggregateRow row;
    row.n = n;
    std::vector<double> xs;
    for (const TrialRecord& r : rep.records) {
      if (r.n != n) continue;
      if (r.edit_distance < 0)
        ++row.failed;
      else
        xs.push_back(static_cast<double>(r.edit_distance));
    }
    row.completed = xs.size();
    if (!xs.empty()) {
      double sum = 0;
      for (double x : xs) sum += x;
      row.mean_distance = sum / static_cast<double>(xs.size());
      if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - row.mean_distance) * (x - row.mean_distance);
        row.std_distance = std::sqrt(ss / static_cast<double>(xs.size() - 1));
      }
    }
    rep.aggregates.push_back(row);
  }
  return rep;
}

std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "n,seed,algorithm,edit_distance,f_hamming,runtime_ms\n";
  char buf[64];
  for (const TrialRecord& t : r.records) {
    std::snprintf(buf, sizeof buf, "%.3f", t.runtime_ms);
    out << t.n << "," << t.seed << "," << recovery_algo_name(t.algorithm)
        << "," << t.edit_distance << "," << t.f_hamming << "," << buf << "\n";
  }
  return out.str();
}

std::string report_summary(const ExperimentReport& r) {
  std::ostringstream out;
  char buf[128];
  for (const AggregateRow& a : r.aggregates) {
    std::snprintf(buf, sizeof buf,
                  "n=%zu completed=%zu failed=%zu mean_edit_distance=%.3f "
                  "std=%.3f",
                  a.n, a.completed, a.failed, a.mean_distance, a.std_distance);
    out << buf << "\n";
  }
  return out.str();
}

}  // namespace itopo
