#include <fstream>
#include <map>
#include <sstream>

#include "itopo/error.hpp"
#include "itopo/graph.hpp"

namespace itopo {

// Text format: one header line "overlay <k> underlay <m>", then one "i j"
// line per undirected edge.  Node ids are implied by the header: 1..k are
// hosts, k+1..k+m routers.  '#' starts a comment.  Graphs whose ids are not
// already in that canonical shape are relabelled on the way out (host order
// and router order are preserved), so writing is total but not always
// id-preserving.

std::string write_graph(const NetworkGraph& g) {
  std::vector<int> ov = g.overlay_ids();
  std::vector<int> un = g.underlay_ids();
  std::map<int, int> relabel;
  int next = 1;
  for (int o : ov) relabel[o] = next++;
  for (int u : un) relabel[u] = next++;

  std::ostringstream out;
  out << "overlay " << ov.size() << " underlay " << un.size() << "\n";
  for (auto [a, b] : g.edges()) {
    int ra = relabel[a], rb = relabel[b];
    if (ra > rb) std::swap(ra, rb);
    out << ra << " " << rb << "\n";
  }
  return out.str();
}

NetworkGraph read_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  long k = -1, m = -1;
  NetworkGraph g;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (k < 0) {
      std::string w1, w2;
      if (!(ls >> w1)) continue;  // blank before the header
      if (!(ls >> k >> w2 >> m) || w1 != "overlay" || w2 != "underlay" ||
          k < 0 || m < 0)
        fail(Errc::IoError, "graph line " + std::to_string(lineno) +
                                ": expected 'overlay <k> underlay <m>'");
      for (long id = 1; id <= k; ++id)
        g.add_node(static_cast<int>(id), NodeKind::Overlay);
      for (long id = k + 1; id <= k + m; ++id)
        g.add_node(static_cast<int>(id), NodeKind::Underlay);
      continue;
    }
    std::string first;
    if (!(ls >> first)) continue;
    long a, b;
    std::istringstream es(first);
    if (!(es >> a) || !(ls >> b) || a < 1 || b < 1 || a > k + m || b > k + m)
      fail(Errc::IoError, "graph line " + std::to_string(lineno) +
                              ": expected an edge 'i j' with ids in 1.." +
                              std::to_string(k + m));
    g.add_edge(static_cast<int>(a), static_cast<int>(b));
  }
  if (k < 0) fail(Errc::IoError, "graph text has no header line");
  return g;
}

NetworkGraph load_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return read_graph(buf.str());
}

void save_graph_file(const NetworkGraph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(Errc::IoError, "cannot open " + path + " for writing");
  f << write_graph(g);
  if (!f) fail(Errc::IoError, "write failed: " + path);
}

std::string to_dot(const NetworkGraph& g) {
  std::ostringstream out;
  out << "graph net {\n";
  for (int o : g.overlay_ids()) out << "  " << o << " [shape=circle];\n";
  for (int u : g.underlay_ids()) out << "  " << u << " [shape=box];\n";
  for (auto [a, b] : g.edges()) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace itopo
