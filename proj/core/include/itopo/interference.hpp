#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "itopo/graph.hpp"

namespace itopo {

// Symmetric 0/1 matrix over tunnels.  Row k corresponds to pairs[k], the
// ordered (src, dst) overlay pair of tunnel k; rows are sorted by that pair.
// F[k][l] == 1 means tunnels k and l traverse at least one common directed
// link (so this is direction-sensitive: two tunnels crossing the same cable
// in opposite directions do not interfere).
class InterferenceMatrix {
 public:
  InterferenceMatrix() = default;
  explicit InterferenceMatrix(std::vector<std::pair<int, int>> pairs)
      : pairs_(std::move(pairs)), data_(pairs_.size() * pairs_.size(), 0) {
    for (std::size_t k = 0; k < pairs_.size(); ++k) at(k, k) = 1;
  }

  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  std::uint8_t& at(std::size_t k, std::size_t l) {
    return data_[k * pairs_.size() + l];
  }
  std::uint8_t at(std::size_t k, std::size_t l) const {
    return data_[k * pairs_.size() + l];
  }

  // Index of the row whose (src, dst) equals the argument; throws if absent.
  std::size_t row_of(int src, int dst) const;

  bool operator==(const InterferenceMatrix&) const = default;

 private:
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::uint8_t> data_;
};

// Routes every ordered overlay pair and marks interference by shared
// directed links.  This is the ground-truth oracle used to score estimates.
InterferenceMatrix interference_from_topology(const NetworkGraph& g);

// Same computation but from an explicit tunnel set (which need not come from
// shortest-path routing).
InterferenceMatrix interference_from_tunnels(const std::vector<Tunnel>& ts);

// Number of differing entries; both orderings must describe the same pairs.
std::size_t hamming_distance(const InterferenceMatrix& a,
                             const InterferenceMatrix& b);

// The matrix viewed as a graph: one vertex per tunnel row, one edge per
// off-diagonal 1 entry.
struct InterferenceGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // a < b, sorted
};

InterferenceGraph build_interference_graph(const InterferenceMatrix& f);

// CSV with tunnel labels: the first row and first column hold "src>dst"
// labels, every other cell is 0 or 1.  The reader accepts rows in any label
// order and renormalizes: rows are re-sorted into the canonical (src, dst)
// order and the diagonal is forced to 1.
std::string write_fmatrix(const InterferenceMatrix& f);
InterferenceMatrix read_fmatrix(const std::string& text);
InterferenceMatrix load_fmatrix_file(const std::string& path);
void save_fmatrix_file(const InterferenceMatrix& f, const std::string& path);

}  // namespace itopo
