#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mnsl {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;  // first < second

/// Simple undirected graph on a fixed node set {0, ..., n-1}.
/// Neighbor lists are kept sorted so common-neighbor queries are a merge.
/// Graphs with at most kBitIndexLimit nodes also keep an adjacency bit
/// matrix, turning edge tests into a bit lookup and common-neighbor counts
/// into a popcount over n/64 words.
class Graph {
 public:
  static constexpr std::size_t kBitIndexLimit = 4096;

  Graph() = default;
  explicit Graph(std::size_t n_nodes);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t degree(Node v) const { return adjacency_.at(v).size(); }
  std::span<const Node> neighbors(Node v) const { return adjacency_.at(v); }

  bool has_edge(Node u, Node v) const;

  /// Inserts {u,v}. Throws InvalidArgument on self-loops, out-of-range
  /// endpoints or duplicates.
  void add_edge(Node u, Node v);

  /// |N(u) ∩ N(v)|, iterating the shorter list.
  std::size_t common_neighbor_count(Node u, Node v) const;

  /// All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edge_count_ == b.edge_count_ && a.adjacency_ == b.adjacency_;
  }

 private:
  bool bit(Node u, Node v) const { return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U; }

  std::vector<std::vector<Node>> adjacency_;
  std::size_t edge_count_ = 0;
  std::size_t words_ = 0;  // 64-bit words per bit-matrix row; 0 when unused
  std::vector<std::uint64_t> bits_;
};

/// Edge-list text format: "n_nodes n_edges" header, then one "u v" line per
/// edge, 0-indexed, u < v, sorted lexicographically.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

/// Accepts pairs in any order and orientation; rejects self-loops,
/// duplicates, out-of-range nodes and an edge count differing from the header.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace mnsl
