#include "itopo/interference.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "itopo/error.hpp"

namespace itopo {

std::size_t InterferenceMatrix::row_of(int src, int dst) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(),
                             std::make_pair(src, dst));
  if (it == pairs_.end() || *it != std::make_pair(src, dst))
    fail(Errc::IndexMismatch, "no tunnel row for pair (" +
                                  std::to_string(src) + ", " +
                                  std::to_string(dst) + ")");
  return static_cast<std::size_t>(it - pairs_.begin());
}

static bool share_directed_link(const std::vector<std::pair<int, int>>& a,
                                const std::vector<std::pair<int, int>>& b) {
  // both link lists are sorted; two-pointer intersection test
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

InterferenceMatrix interference_from_tunnels(const std::vector<Tunnel>& ts) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(ts.size());
  for (const auto& t : ts) pairs.emplace_back(t.src, t.dst);
  if (!std::is_sorted(pairs.begin(), pairs.end()))
    fail(Errc::IndexMismatch, "tunnel list not sorted by (src, dst)");

  std::vector<std::vector<std::pair<int, int>>> sorted_links(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    sorted_links[k] = ts[k].links;
    std::sort(sorted_links[k].begin(), sorted_links[k].end());
  }

  InterferenceMatrix f(std::move(pairs));
  for (std::size_t k = 0; k < ts.size(); ++k)
    for (std::size_t l = k + 1; l < ts.size(); ++l)
      if (share_directed_link(sorted_links[k], sorted_links[l]))
        f.at(k, l) = f.at(l, k) = 1;
  return f;
}

InterferenceMatrix interference_from_topology(const NetworkGraph& g) {
  return interference_from_tunnels(enumerate_tunnels(g));
}

std::size_t hamming_distance(const InterferenceMatrix& a,
                             const InterferenceMatrix& b) {
  if (a.pairs() != b.pairs())
    fail(Errc::IndexMismatch, "interference matrices index different tunnels");
  std::size_t n = a.size(), d = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (a.at(k, l) != b.at(k, l)) ++d;
  return d;
}

InterferenceGraph build_interference_graph(const InterferenceMatrix& f) {
  InterferenceGraph gf;
  gf.n = f.size();
  for (std::size_t k = 0; k < f.size(); ++k)
    for (std::size_t l = k + 1; l < f.size(); ++l)
      if (f.at(k, l)) gf.edges.emplace_back(k, l);
  return gf;
}

static std::pair<int, int> parse_label(const std::string& cell) {
  auto gt = cell.find('>');
  int s = 0, d = 0;
  if (gt != std::string::npos) {
    try {
      s = std::stoi(cell.substr(0, gt));
      d = std::stoi(cell.substr(gt + 1));
    } catch (const std::exception&) {
      gt = std::string::npos;
    }
  }
  if (gt == std::string::npos || s == d)
    fail(Errc::IoError, "interference csv: bad tunnel label '" + cell + "'");
  return {s, d};
}

static std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string write_fmatrix(const InterferenceMatrix& f) {
  std::ostringstream out;
  for (auto [s, d] : f.pairs()) out << "," << s << ">" << d;
  out << "\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    out << f.pairs()[k].first << ">" << f.pairs()[k].second;
    for (std::size_t l = 0; l < f.size(); ++l) out << "," << int(f.at(k, l));
    out << "\n";
  }
  return out.str();
}

InterferenceMatrix read_fmatrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, int>> cols;
  std::vector<std::pair<int, int>> row_pairs;
  std::vector<std::vector<std::uint8_t>> rows;
  bool seen_header = false;
  while (std::getline(in, line)) {
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() == 1 && cells[0].empty()) continue;  // blank line
    if (!seen_header) {
      seen_header = true;
      if (!cells[0].empty())
        fail(Errc::IoError,
             "interference csv: header must start with an empty cell");
      for (std::size_t c = 1; c < cells.size(); ++c)
        cols.push_back(parse_label(cells[c]));
      continue;
    }
    if (cells.size() != cols.size() + 1)
      fail(Errc::IoError, "interference csv: row '" + cells[0] + "' has " +
                              std::to_string(cells.size() - 1) +
                              " entries, expected " +
                              std::to_string(cols.size()));
    row_pairs.push_back(parse_label(cells[0]));
    std::vector<std::uint8_t> row;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c] != "0" && cells[c] != "1")
        fail(Errc::IoError, "interference csv: entries must be 0 or 1");
      row.push_back(cells[c] == "1");
    }
    rows.push_back(std::move(row));
  }
  if (!seen_header || cols.empty())
    fail(Errc::IoError, "interference csv: missing header row");
  if (row_pairs.size() != cols.size())
    fail(Errc::IoError, "interference csv: matrix is not square");

  // map both axes onto the canonical sorted pair order
  std::vector<std::pair<int, int>> sorted = cols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(Errc::IoError, "interference csv: duplicate tunnel label");
  auto index_of = [&](std::pair<int, int> p, const char* axis) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
    if (it == sorted.end() || *it != p)
      fail(Errc::IoError, std::string("interference csv: ") + axis +
                              " labels do not match column labels");
    return static_cast<std::size_t>(it - sorted.begin());
  };
  InterferenceMatrix f(sorted);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t k = index_of(row_pairs[r], "row");
    for (std::size_t c = 0; c < cols.size(); ++c)
      f.at(k, index_of(cols[c], "column")) = rows[r][c];
  }
  std::set<std::size_t> seen_rows;
  for (auto p : row_pairs) seen_rows.insert(index_of(p, "row"));
  if (seen_rows.size() != sorted.size())
    fail(Errc::IoError, "interference csv: duplicate row label");
  for (std::size_t k = 0; k < f.size(); ++k) {
    f.at(k, k) = 1;  // diagonal is 1 by convention regardless of the file
    for (std::size_t l = 0; l < f.size(); ++l)
      if (f.at(k, l) != f.at(l, k))
        fail(Errc::IoError, "interference csv: matrix not symmetric");
  }
  return f;
}

InterferenceMatrix load_fmatrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return read_fmatrix(buf.str());
}

void save_fmatrix_file(const InterferenceMatrix& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out << write_fmatrix(f);
  if (!out) fail(Errc::IoError, "write failed: " + path);
}

}  // namespace itopo
