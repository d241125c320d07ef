#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mnsl/graph.hpp"

namespace mnsl {

/// Parameters of the Erdős–Rényi G(n, m) variant with triadic closure
/// (p1) and triadic closure plus (p2).
struct ModelParams {
  std::size_t n_nodes = 100;
  std::size_t n_edges = 500;
  double p0 = 0.3;
  double p1 = 0.1;
  double p2 = 0.0;

  /// Throws InvalidParams when an invariant is broken.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct EdgeProposal {
  Node u = 0;
  Node v = 0;
  std::size_t closeable_triangles = 0;
  double acceptance_probability = 0.0;
};

/// min(1, p0 + p1·[t ≥ 1] + p2·max(t − 1, 0)).
double edge_probability(const ModelParams& params, std::size_t closeable_triangles);

/// |N(u) ∩ N(v)| for an unconnected pair u ≠ v.
std::size_t count_closeable_triangles(const Graph& g, Node u, Node v);

/// Called for every proposal of an unconnected pair, before the edge (if
/// accepted) is inserted, so `g` is the pre-acceptance graph.
using ProposalObserver =
    std::function<void(const Graph& g, const EdgeProposal& proposal, bool accepted)>;

struct GenerateOptions {
  /// Total pair draws allowed, including draws of already-connected pairs.
  std::uint64_t proposal_cap = 1'000'000'000ULL;
  ProposalObserver observer;
};

/// Grows a graph from empty: draw a uniform unordered pair, skip it if
/// connected, otherwise add it with edge_probability at the current closeable
/// triangle count. Stops once n_edges edges are present.
Graph generate(const ModelParams& params, std::uint64_t seed, const GenerateOptions& options = {});

/// Element i is generate(params, derive_seed(seed, i)). Runs on the
/// parallel_for pool.
std::vector<Graph> generate_batch(const ModelParams& params, std::uint64_t seed, std::size_t count,
                                  const GenerateOptions& options = {});

}  // namespace mnsl
