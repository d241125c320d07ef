#include "mnsl/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mnsl/error.hpp"

namespace mnsl {

Graph::Graph(std::size_t n_nodes) : adjacency_(n_nodes) {
  if (n_nodes <= kBitIndexLimit) {
    words_ = (n_nodes + 63) / 64;
    bits_.assign(n_nodes * words_, 0);
  }
}

bool Graph::has_edge(Node u, Node v) const {
  if (u >= node_count() || v >= node_count()) return false;
  if (words_ != 0) return bit(u, v);
  if (adjacency_[v].size() < adjacency_[u].size()) std::swap(u, v);
  const auto& a = adjacency_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

void Graph::add_edge(Node u, Node v) {
  if (u == v) throw Error(ErrorKind::InvalidArgument, "self-loop on node " + std::to_string(u));
  if (u >= node_count() || v >= node_count())
    throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
  auto& au = adjacency_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v)
    throw Error(ErrorKind::InvalidArgument,
                "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  au.insert(it, v);
  if (words_ != 0) {
    bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  }
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

std::size_t Graph::common_neighbor_count(Node u, Node v) const {
  const auto& a = adjacency_.at(u);
  const auto& b = adjacency_.at(v);
  if (words_ != 0) {
    const auto* ru = bits_.data() + u * words_;
    const auto* rv = bits_.data() + v * words_;
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += static_cast<std::size_t>(std::popcount(ru[w] & rv[w]));
    return count;
  }
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t count = 0;
  if (small.size() * 8 < large.size()) {
    for (Node w : small) count += std::binary_search(large.begin(), large.end(), w);
    return count;
  }
  auto i = small.begin();
  auto j = large.begin();
  while (i != small.end() && j != large.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Node u = 0; u < node_count(); ++u)
    for (Node v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

Graph read_edge_list(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0)
    throw Error(ErrorKind::Parse, "edge list: malformed header");
  Graph g(static_cast<std::size_t>(n));
  for (long long k = 0; k < m; ++k) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v))
      throw Error(ErrorKind::Parse, "edge list: expected " + std::to_string(m) + " edges, got " +
                                        std::to_string(k));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorKind::Parse, "edge list: node out of range on edge " + std::to_string(k));
    try {
      g.add_edge(static_cast<Node>(u), static_cast<Node>(v));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, std::string("edge list: ") + e.what());
    }
  }
  std::string trailing;
  if (in >> trailing) throw Error(ErrorKind::Parse, "edge list: more edges than header declares");
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return read_edge_list(in);
  } catch (const Error& e) {
    throw e.with_context(path);
  }
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace mnsl
