#include "itopo/traffic.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "itopo/error.hpp"
#include "itopo/rng.hpp"

namespace itopo {

namespace {

struct Packet {
  int tunnel = 0;  // 0 = a, 1 = b
  double sent = 0.0;
  std::size_t hop = 0;  // next link index on its path
  int h_own = 0;
  int h_other = 0;
};

struct LinkQueue {
  std::queue<std::size_t> waiting;  // packet ids, head is in service
  bool busy = false;
};

// events: (time, kind, id); completions (kind 0) before arrivals (kind 1) at
// equal stamps so a freed server is visible to the newcomer
using Event = std::tuple<double, int, std::size_t>;

}  // namespace

TrafficTrace simulate_pair(const NetworkGraph& g, const Tunnel& a,
                           const Tunnel& b, double rate_a, double rate_b,
                           double horizon, std::uint64_t seed) {
  for (const Tunnel* t : {&a, &b})
    for (auto [x, y] : t->links)
      if (!g.has_node(x) || !g.has_node(y) || !g.has_edge(x, y))
        fail(Errc::IndexMismatch, "tunnel path leaves the supplied graph");

  TrafficTrace trace;
  trace.pair_a = {a.src, a.dst};
  trace.pair_b = {b.src, b.dst};
  trace.rate = std::max(rate_a, rate_b);

  const std::vector<std::pair<int, int>>* paths[2] = {&a.links, &b.links};

  // pre-draw both Poisson arrival streams inside the horizon
  std::vector<std::pair<double, int>> arrivals;  // (time, tunnel)
  const double rates[2] = {rate_a, rate_b};
  for (int t = 0; t < 2; ++t) {
    if (rates[t] <= 0.0) continue;
    Rng rng(Rng::mix64(seed) + static_cast<std::uint64_t>(t) + 1);
    double at = 0.0;
    while (true) {
      at += rng.exponential(rates[t]);
      if (at >= horizon) break;
      arrivals.emplace_back(at, t);
    }
  }
  std::sort(arrivals.begin(), arrivals.end());

  std::map<std::pair<int, int>, LinkQueue> links;
  std::vector<Packet> packets;
  int inflight[2] = {0, 0};
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
  for (std::size_t i = 0; i < arrivals.size(); ++i)
    events.emplace(arrivals[i].first, 1, i);

  // completion events carry the packet id; the link is recoverable from the
  // packet's current hop
  auto start_service = [&](std::size_t pid, double now) {
    events.emplace(now + 1.0, 0, pid);
  };
  auto enqueue = [&](std::size_t pid, double now) {
    const Packet& p = packets[pid];
    LinkQueue& lq = links[(*paths[p.tunnel])[p.hop]];
    lq.waiting.push(pid);
    if (!lq.busy) {
      lq.busy = true;
      start_service(pid, now);
    }
  };

  while (!events.empty()) {
    auto [now, kind, id] = events.top();
    events.pop();
    if (kind == 1) {  // arrival of a fresh packet
      int t = arrivals[id].second;
      Packet p;
      p.tunnel = t;
      p.sent = now;
      p.h_own = inflight[t];
      p.h_other = inflight[1 - t];
      ++inflight[t];
      std::size_t pid = packets.size();
      packets.push_back(p);
      enqueue(pid, now);
    } else {  // service completion at the head of the packet's current link
      Packet& p = packets[id];
      LinkQueue& lq = links[(*paths[p.tunnel])[p.hop]];
      lq.waiting.pop();
      if (lq.waiting.empty())
        lq.busy = false;
      else
        start_service(lq.waiting.front(), now);
      ++p.hop;
      if (p.hop == paths[p.tunnel]->size()) {  // delivered
        --inflight[p.tunnel];
        ProbeSample s;
        s.time = p.sent;
        s.delay = now - p.sent;
        s.h_own = p.h_own;
        s.h_other = p.h_other;
        (p.tunnel == 0 ? trace.samples_a : trace.samples_b).push_back(s);
      } else {
        enqueue(id, now);
      }
    }
  }
  return trace;
}

TrafficTrace simulate_traffic(const NetworkGraph& g, const Tunnel& a,
                              const Tunnel& b, const TrafficConfig& cfg,
                              std::uint64_t seed) {
  TrafficTrace trace =
      simulate_pair(g, a, b, cfg.rate, cfg.rate, cfg.horizon, seed);
  trace.rate = cfg.rate;
  if (trace.samples_a.size() < cfg.min_samples ||
      trace.samples_b.size() < cfg.min_samples)
    fail(Errc::SimulationHorizonTooShort,
         "collected " + std::to_string(trace.samples_a.size()) + "/" +
             std::to_string(trace.samples_b.size()) + " samples, need " +
             std::to_string(cfg.min_samples) + " on both tunnels");
  return trace;
}

double regress_alpha(const std::vector<ProbeSample>& samples) {
  double n = 0.0, m_own = 0.0, m_other = 0.0, m_d = 0.0;
  for (const ProbeSample& s : samples) {
    n += 1.0;
    m_own += s.h_own;
    m_other += s.h_other;
    m_d += s.delay;
  }
  if (n == 0.0)
    fail(Errc::DegenerateRegressor, "empty trace; slope undefined");
  m_own /= n;
  m_other /= n;
  m_d /= n;

  double s_oo = 0.0, s_cc = 0.0, s_oc = 0.0, s_od = 0.0, s_cd = 0.0;
  for (const ProbeSample& s : samples) {
    double own = s.h_own - m_own;
    double other = s.h_other - m_other;
    double d = s.delay - m_d;
    s_oo += own * own;
    s_cc += other * other;
    s_oc += own * other;
    s_od += own * d;
    s_cd += other * d;
  }
  if (s_cc <= 0.0)
    fail(Errc::DegenerateRegressor,
         "other-tunnel in-flight count is constant; slope undefined");
  if (s_oo <= 0.0) return s_cd / s_cc;  // own load constant: plain slope
  double denom = s_oo * s_cc - s_oc * s_oc;
  if (denom <= 1e-12 * s_oo * s_cc)
    fail(Errc::DegenerateRegressor,
         "own and cross in-flight counts are collinear; slope undefined");
  return (s_oo * s_cd - s_oc * s_od) / denom;
}

InterferenceMatrix infer_interference_matrix(const NetworkGraph& g,
                                             const TrafficConfig& cfg,
                                             std::uint64_t seed) {
  std::vector<Tunnel> ts = enumerate_tunnels(g);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(ts.size());
  for (const Tunnel& t : ts) pairs.emplace_back(t.src, t.dst);

  InterferenceMatrix f(std::move(pairs));
  for (std::size_t k = 0; k < ts.size(); ++k)
    for (std::size_t l = k + 1; l < ts.size(); ++l) {
      std::uint64_t pair_seed =
          Rng::mix64(seed) ^ Rng::mix64(k * ts.size() + l + 1);
      TrafficTrace tr = simulate_traffic(g, ts[k], ts[l], cfg, pair_seed);
      double alpha_on_a = regress_alpha(tr.samples_a);
      double alpha_on_b = regress_alpha(tr.samples_b);
      if (std::max(alpha_on_a, alpha_on_b) >= cfg.threshold)
        f.at(k, l) = f.at(l, k) = 1;
    }
  return f;
}

}  // namespace itopo
