#include "itopo/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "itopo/error.hpp"

namespace itopo {

namespace {

std::string nm(std::initializer_list<long long> parts, const char* prefix) {
  std::string s = prefix;
  for (long long p : parts) s += "_" + std::to_string(p);
  return s;
}

}  // namespace

std::size_t IlpModel::var_index(const std::string& name) const {
  auto it = lookup.find(name);
  if (it == lookup.end())
    fail(Errc::IndexMismatch, "unknown variable " + name);
  return it->second;
}

IlpModel build_ilp_model(const InterferenceMatrix& f, std::size_t n_hat) {
  IlpModel m;
  m.pairs = f.pairs();

  std::set<int> overlays;
  for (auto [s, d] : m.pairs) {
    overlays.insert(s);
    overlays.insert(d);
  }
  const std::size_t k = overlays.size();
  for (int o : overlays)
    if (o < 1 || static_cast<std::size_t>(o) > k)
      fail(Errc::IndexMismatch,
           "matrix must use canonical overlay ids 1..k, saw " +
               std::to_string(o));
  if (n_hat < k + 1)
    fail(Errc::BudgetTooSmall, "need at least " + std::to_string(k + 1) +
                                   " nodes, got " + std::to_string(n_hat));
  m.n_hat = n_hat;
  m.n_overlay = k;
  const std::size_t L = m.pairs.size();
  const long long N = static_cast<long long>(n_hat);

  auto add_var = [&](const std::string& name, bool binary) {
    m.lookup.emplace(name, m.var_names.size());
    if (binary) m.binary_vars.push_back(m.var_names.size());
    m.var_names.push_back(name);
    return m.var_names.size() - 1;
  };
  auto x = [&](long long i, long long j) {
    return m.lookup.at(nm({std::min(i, j), std::max(i, j)}, "x"));
  };
  auto xt = [&](std::size_t l, long long i, long long j) {
    return m.lookup.at(nm({static_cast<long long>(l + 1), i, j}, "xt"));
  };
  auto uv = [&](std::size_t l, long long i) {
    return m.lookup.at(nm({static_cast<long long>(l + 1), i}, "u"));
  };

  for (long long i = 1; i <= N; ++i)
    for (long long j = i + 1; j <= N; ++j)
      m.objective.push_back(add_var(nm({i, j}, "x"), true));
  for (std::size_t l = 0; l < L; ++l)
    for (long long i = 1; i <= N; ++i)
      for (long long j = 1; j <= N; ++j)
        if (i != j) add_var(nm({static_cast<long long>(l + 1), i, j}, "xt"), true);
  for (std::size_t l = 0; l < L; ++l)
    for (long long i = 1; i <= N; ++i)
      add_var(nm({static_cast<long long>(l + 1), i}, "u"), false);

  std::vector<std::pair<std::size_t, std::size_t>> meet_pairs, dis_pairs;
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a + 1; b < L; ++b)
      (f.at(a, b) ? meet_pairs : dis_pairs).emplace_back(a, b);
  for (auto [a, b] : meet_pairs)
    for (long long i = 1; i <= N; ++i)
      for (long long j = 1; j <= N; ++j)
        if (i != j)
          add_var(nm({static_cast<long long>(a + 1),
                      static_cast<long long>(b + 1), i, j},
                     "y"),
                  true);
  auto yv = [&](std::size_t a, std::size_t b, long long i, long long j) {
    return m.lookup.at(nm({static_cast<long long>(a + 1),
                           static_cast<long long>(b + 1), i, j},
                          "y"));
  };

  auto con = [&](std::string name, char rel, double rhs) -> IlpModel::Constraint& {
    m.constraints.push_back({std::move(name), {}, rel, rhs});
    return m.constraints.back();
  };

  // edge-use linking: x_ij dominates every directed use and is dominated by
  // their sum
  for (long long i = 1; i <= N; ++i)
    for (long long j = i + 1; j <= N; ++j) {
      for (std::size_t l = 0; l < L; ++l) {
        auto& ca = con(nm({static_cast<long long>(l + 1), i, j}, "or_a"), '<', 0);
        ca.terms = {{1, xt(l, i, j)}, {-1, x(i, j)}};
        auto& cb = con(nm({static_cast<long long>(l + 1), i, j}, "or_b"), '<', 0);
        cb.terms = {{1, xt(l, j, i)}, {-1, x(i, j)}};
      }
      auto& cc = con(nm({i, j}, "or_c"), '<', 0);
      cc.terms.emplace_back(1, x(i, j));
      for (std::size_t l = 0; l < L; ++l) {
        cc.terms.emplace_back(-1, xt(l, i, j));
        cc.terms.emplace_back(-1, xt(l, j, i));
      }
    }

  // each host hangs off exactly one edge
  for (long long i = 1; i <= static_cast<long long>(k); ++i) {
    auto& c = con(nm({i}, "deg"), '=', 1);
    for (long long j = 1; j <= N; ++j)
      if (j != i) c.terms.emplace_back(1, x(i, j));
  }

  // flow conservation per tunnel and node: in + start = out + end
  for (std::size_t l = 0; l < L; ++l)
    for (long long j = 1; j <= N; ++j) {
      const double s = (m.pairs[l].first == j) ? 1 : 0;
      const double d = (m.pairs[l].second == j) ? 1 : 0;
      auto& c = con(nm({static_cast<long long>(l + 1), j}, "flow"), '=', d - s);
      for (long long i = 1; i <= N; ++i)
        if (i != j) c.terms.emplace_back(1, xt(l, i, j));
      for (long long i = 1; i <= N; ++i)
        if (i != j) c.terms.emplace_back(-1, xt(l, j, i));
    }

  // order potentials: following a used link strictly increases u, so no loop
  for (std::size_t l = 0; l < L; ++l)
    for (long long i = 1; i <= N; ++i)
      for (long long j = 1; j <= N; ++j) {
        if (i == j) continue;
        auto& c = con(nm({static_cast<long long>(l + 1), i, j}, "mtz"), '<',
                      static_cast<double>(N - 1));
        c.terms = {{1, uv(l, i)}, {-1, uv(l, j)},
                   {static_cast<double>(N), xt(l, i, j)}};
      }

  // non-interfering pairs may never share a directed link
  for (auto [a, b] : dis_pairs)
    for (long long i = 1; i <= N; ++i)
      for (long long j = 1; j <= N; ++j) {
        if (i == j) continue;
        auto& c = con(nm({static_cast<long long>(a + 1),
                          static_cast<long long>(b + 1), i, j},
                         "dis"),
                      '<', 1);
        c.terms = {{1, xt(a, i, j)}, {1, xt(b, i, j)}};
      }

  // interfering pairs must share somewhere: y is the AND of the two uses and
  // at least one y per pair is on
  for (auto [a, b] : meet_pairs) {
    for (long long i = 1; i <= N; ++i)
      for (long long j = 1; j <= N; ++j) {
        if (i == j) continue;
        const long long la = static_cast<long long>(a + 1);
        const long long lb = static_cast<long long>(b + 1);
        auto& c1 = con(nm({la, lb, i, j}, "and_a"), '<', 0);
        c1.terms = {{1, yv(a, b, i, j)}, {-1, xt(a, i, j)}};
        auto& c2 = con(nm({la, lb, i, j}, "and_b"), '<', 0);
        c2.terms = {{1, yv(a, b, i, j)}, {-1, xt(b, i, j)}};
        auto& c3 = con(nm({la, lb, i, j}, "and_c"), '<', 1);
        c3.terms = {{1, xt(a, i, j)}, {1, xt(b, i, j)}, {-1, yv(a, b, i, j)}};
      }
    auto& c = con(nm({static_cast<long long>(a + 1),
                      static_cast<long long>(b + 1)},
                     "meet"),
                  '>', 1);
    for (long long i = 1; i <= N; ++i)
      for (long long j = 1; j <= N; ++j)
        if (i != j) c.terms.emplace_back(1, yv(a, b, i, j));
  }

  return m;
}

namespace {

std::string format_coef(double c) {
  long long ll = static_cast<long long>(std::llround(c));
  if (std::abs(c - static_cast<double>(ll)) < 1e-9) return std::to_string(ll);
  std::ostringstream os;
  os << c;
  return os.str();
}

class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}
  void begin(const std::string& head) {
    line_ = " " + head;
  }
  void term(const std::string& piece) {
    if (line_.size() + piece.size() + 1 > 200) {
      out_ << line_ << "\n";
      line_ = "  ";  // continuation indent
    }
    line_ += " " + piece;
  }
  void end() { out_ << line_ << "\n"; }

 private:
  std::ostringstream& out_;
  std::string line_;
};

void write_terms(LineWriter& w, const IlpModel& m,
                 const std::vector<std::pair<double, std::size_t>>& terms) {
  bool first = true;
  for (auto [c, v] : terms) {
    std::string piece;
    if (c < 0)
      piece = "- ";
    else if (!first)
      piece = "+ ";
    const double mag = std::abs(c);
    if (std::abs(mag - 1.0) > 1e-9) piece += format_coef(mag) + " ";
    piece += m.var_names[v];
    w.term(piece);
    first = false;
  }
}

}  // namespace

std::string export_lp(const IlpModel& m) {
  std::ostringstream out;
  out << "\\ minimal network reconstruction\n";
  out << "Minimize\n";
  LineWriter w(out);
  w.begin("obj:");
  {
    std::vector<std::pair<double, std::size_t>> terms;
    for (std::size_t v : m.objective) terms.emplace_back(1, v);
    write_terms(w, m, terms);
  }
  w.end();
  out << "Subject To\n";
  for (const auto& c : m.constraints) {
    w.begin(c.name + ":");
    write_terms(w, m, c.terms);
    const char* rel = c.rel == '<' ? "<=" : c.rel == '>' ? ">=" : "=";
    w.term(std::string(rel) + " " + format_coef(c.rhs));
    w.end();
  }
  {
    // continuous order potentials: nonnegative, no upper cap
    std::vector<char> is_bin(m.var_names.size(), 0);
    for (std::size_t v : m.binary_vars) is_bin[v] = 1;
    bool any = false;
    for (std::size_t v = 0; v < m.var_names.size(); ++v) {
      if (is_bin[v]) continue;
      if (!any) out << "Bounds\n";
      any = true;
      out << " " << m.var_names[v] << " >= 0\n";
    }
  }
  out << "Binary\n";
  {
    w.begin("");
    for (std::size_t v : m.binary_vars) w.term(m.var_names[v]);
    w.end();
  }
  out << "End\n";
  return out.str();
}

namespace {

bool is_relation(const std::string& t) {
  return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">";
}

bool is_number(const std::string& t) {
  if (t.empty()) return false;
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  return end && *end == '\0';
}

}  // namespace

IlpModel parse_lp(const std::string& text) {
  // tokenize, dropping backslash comments
  std::vector<std::string> tok;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (auto p = line.find('\\'); p != std::string::npos) line.erase(p);
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) tok.push_back(t);
    }
  }

  IlpModel m;
  auto intern = [&](const std::string& name) {
    auto it = m.lookup.find(name);
    if (it != m.lookup.end()) return it->second;
    m.lookup.emplace(name, m.var_names.size());
    m.var_names.push_back(name);
    return m.var_names.size() - 1;
  };

  std::size_t i = 0;
  auto expect = [&](const std::string& word) {
    if (i >= tok.size() || tok[i] != word)
      fail(Errc::IoError, "LP parse: expected '" + word + "'");
    ++i;
  };
  expect("Minimize");
  if (i >= tok.size() || tok[i] != "obj:")
    fail(Errc::IoError, "LP parse: expected 'obj:'");
  ++i;

  auto at_section = [&]() {
    return i < tok.size() &&
           (tok[i] == "Subject" || tok[i] == "Binary" || tok[i] == "Bounds" ||
            tok[i] == "General" || tok[i] == "End");
  };
  auto looks_like_label = [&](const std::string& t) {
    return !t.empty() && t.back() == ':';
  };

  // term list: [sign] [coef] var ...
  auto parse_terms = [&](std::vector<std::pair<double, std::size_t>>& terms,
                         bool stop_at_relation) -> void {
    while (i < tok.size() && !at_section() && !looks_like_label(tok[i])) {
      if (stop_at_relation && is_relation(tok[i])) return;
      double sign = 1.0;
      if (tok[i] == "+") {
        ++i;
      } else if (tok[i] == "-") {
        sign = -1.0;
        ++i;
      }
      if (i >= tok.size()) fail(Errc::IoError, "LP parse: dangling sign");
      double coef = 1.0;
      if (is_number(tok[i])) {
        coef = std::strtod(tok[i].c_str(), nullptr);
        ++i;
      }
      if (i >= tok.size() || is_relation(tok[i]) || looks_like_label(tok[i]))
        fail(Errc::IoError, "LP parse: expected variable name");
      terms.emplace_back(sign * coef, intern(tok[i]));
      ++i;
    }
  };

  std::vector<std::pair<double, std::size_t>> obj_terms;
  parse_terms(obj_terms, false);
  for (auto [c, v] : obj_terms) {
    if (std::abs(c - 1.0) > 1e-9)
      fail(Errc::IoError, "LP parse: objective coefficients must be 1");
    m.objective.push_back(v);
  }

  expect("Subject");
  expect("To");
  while (i < tok.size() && !at_section()) {
    if (!looks_like_label(tok[i]))
      fail(Errc::IoError, "LP parse: expected constraint label, got '" +
                              tok[i] + "'");
    IlpModel::Constraint c;
    c.name = tok[i].substr(0, tok[i].size() - 1);
    ++i;
    parse_terms(c.terms, true);
    if (i >= tok.size() || !is_relation(tok[i]))
      fail(Errc::IoError, "LP parse: missing relation in " + c.name);
    c.rel = tok[i][0] == '<' ? '<' : tok[i][0] == '>' ? '>' : '=';
    ++i;
    if (i >= tok.size() || !is_number(tok[i]))
      fail(Errc::IoError, "LP parse: missing rhs in " + c.name);
    c.rhs = std::strtod(tok[i].c_str(), nullptr);
    ++i;
    m.constraints.push_back(std::move(c));
  }

  while (i < tok.size() && tok[i] != "End") {
    if (tok[i] == "Binary") {
      ++i;
      while (i < tok.size() && !at_section())
        m.binary_vars.push_back(intern(tok[i++]));
    } else if (tok[i] == "Bounds" || tok[i] == "General") {
      ++i;
      while (i < tok.size() && !at_section()) ++i;
    } else {
      fail(Errc::IoError, "LP parse: unexpected token '" + tok[i] + "'");
    }
  }

  // recover the semantic fields from the constraint families: flow rhs -1
  // marks a tunnel's source, +1 its destination; deg rows count overlays
  int max_node = 0;
  for (const auto& [name, idx] : m.lookup) {
    if (name.rfind("x_", 0) == 0) {
      int a = 0, b = 0;
      if (sscanf(name.c_str(), "x_%d_%d", &a, &b) == 2)
        max_node = std::max({max_node, a, b});
    }
  }
  m.n_hat = static_cast<std::size_t>(max_node);
  std::size_t n_deg = 0;
  std::map<int, std::pair<int, int>> by_tunnel;  // l -> (src, dst)
  for (const auto& c : m.constraints) {
    if (c.name.rfind("deg_", 0) == 0) ++n_deg;
    if (c.name.rfind("flow_", 0) == 0) {
      int l = 0, j = 0;
      if (sscanf(c.name.c_str(), "flow_%d_%d", &l, &j) == 2) {
        if (c.rhs < -0.5) by_tunnel[l].first = j;
        if (c.rhs > 0.5) by_tunnel[l].second = j;
      }
    }
  }
  m.n_overlay = n_deg;
  for (auto& [l, sd] : by_tunnel) m.pairs.push_back(sd);
  return m;
}

bool same_structure(const IlpModel& a, const IlpModel& b) {
  auto names = [](const IlpModel& m, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (std::size_t v : idx) out.push_back(m.var_names[v]);
    return out;
  };
  if (names(a, a.objective) != names(b, b.objective)) return false;
  if (names(a, a.binary_vars) != names(b, b.binary_vars)) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const auto& ca = a.constraints[i];
    const auto& cb = b.constraints[i];
    if (ca.name != cb.name || ca.rel != cb.rel ||
        std::abs(ca.rhs - cb.rhs) > 1e-9)
      return false;
    if (ca.terms.size() != cb.terms.size()) return false;
    for (std::size_t t = 0; t < ca.terms.size(); ++t) {
      if (std::abs(ca.terms[t].first - cb.terms[t].first) > 1e-9) return false;
      if (a.var_names[ca.terms[t].second] != b.var_names[cb.terms[t].second])
        return false;
    }
  }
  return true;
}

RecoveredGraph import_solution(const IlpModel& m, const std::string& text) {
  std::vector<double> value(m.var_names.size(), 0.0);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::string name;
    double v;
    if (!(ls >> name)) continue;
    if (!(ls >> v))
      fail(Errc::IoError, "solution line without value: " + line);
    auto it = m.lookup.find(name);
    if (it == m.lookup.end())
      fail(Errc::IoError, "solution names unknown variable " + name);
    value[it->second] = v;
  }

  RecoveredGraph sol;
  const std::size_t L = m.pairs.size();
  std::set<int> used;
  for (std::size_t l = 0; l < L; ++l) {
    std::map<int, int> succ;
    for (long long i = 1; i <= static_cast<long long>(m.n_hat); ++i)
      for (long long j = 1; j <= static_cast<long long>(m.n_hat); ++j) {
        if (i == j) continue;
        auto it = m.lookup.find(nm({static_cast<long long>(l + 1), i, j}, "xt"));
        if (it != m.lookup.end() && value[it->second] > 0.5) {
          if (succ.count(static_cast<int>(i)))
            fail(Errc::IoError, "tunnel " + std::to_string(l + 1) +
                                    " branches at node " + std::to_string(i));
          succ[static_cast<int>(i)] = static_cast<int>(j);
        }
      }
    Tunnel t;
    t.src = m.pairs[l].first;
    t.dst = m.pairs[l].second;
    t.nodes.push_back(t.src);
    int cur = t.src;
    while (cur != t.dst) {
      auto it = succ.find(cur);
      if (it == succ.end())
        fail(Errc::IoError, "tunnel " + std::to_string(l + 1) +
                                " path breaks at node " + std::to_string(cur));
      cur = it->second;
      if (std::find(t.nodes.begin(), t.nodes.end(), cur) != t.nodes.end())
        fail(Errc::IoError,
             "tunnel " + std::to_string(l + 1) + " revisits a node");
      t.nodes.push_back(cur);
    }
    for (std::size_t h = 0; h + 1 < t.nodes.size(); ++h)
      t.links.emplace_back(t.nodes[h], t.nodes[h + 1]);
    for (int n : t.nodes) used.insert(n);
    sol.tunnels.push_back(std::move(t));
  }

  for (int n : used)
    sol.graph.add_node(n, static_cast<std::size_t>(n) <= m.n_overlay
                              ? NodeKind::Overlay
                              : NodeKind::Underlay);
  for (long long i = 1; i <= static_cast<long long>(m.n_hat); ++i)
    for (long long j = i + 1; j <= static_cast<long long>(m.n_hat); ++j) {
      auto it = m.lookup.find(nm({i, j}, "x"));
      if (it != m.lookup.end() && value[it->second] > 0.5 &&
          used.count(static_cast<int>(i)) && used.count(static_cast<int>(j)))
        sol.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  return sol;
}

}  // namespace itopo
