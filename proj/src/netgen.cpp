#include "mnsl/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mnsl/error.hpp"
#include "mnsl/parallel.hpp"
#include "mnsl/rng.hpp"

namespace mnsl {

void ModelParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParams, what); };
  if (n_nodes < 2) fail("n_nodes must be at least 2");
  const std::size_t max_edges = n_nodes * (n_nodes - 1) / 2;
  if (n_edges < 1) fail("n_edges must be positive");
  if (n_edges > max_edges)
    fail("n_edges " + std::to_string(n_edges) + " exceeds C(n,2) = " + std::to_string(max_edges));
  if (!(p0 >= 0.0 && p0 <= 1.0)) fail("p0 must lie in [0,1]");
  if (!(p1 >= 0.0) || !std::isfinite(p1)) fail("p1 must be nonnegative");
  if (!(p2 >= 0.0) || !std::isfinite(p2)) fail("p2 must be nonnegative");
}

double edge_probability(const ModelParams& params, std::size_t closeable_triangles) {
  double p = params.p0;
  if (closeable_triangles >= 1) {
    p += params.p1 + params.p2 * static_cast<double>(closeable_triangles - 1);
  }
  return std::min(1.0, p);
}

std::size_t count_closeable_triangles(const Graph& g, Node u, Node v) {
  if (u == v) throw Error(ErrorKind::InvalidArgument, "closeable triangles: u == v");
  if (u >= g.node_count() || v >= g.node_count())
    throw Error(ErrorKind::InvalidArgument, "closeable triangles: node out of range");
  if (g.has_edge(u, v))
    throw Error(ErrorKind::InvalidArgument, "closeable triangles: pair already connected");
  return g.common_neighbor_count(u, v);
}

Graph generate(const ModelParams& params, std::uint64_t seed, const GenerateOptions& options) {
  params.validate();
  // Growth starts from the empty graph, where every pair has t_c = 0.
  if (params.p0 == 0.0)
    throw Error(ErrorKind::NonTerminating,
                "p0 = 0: no edge can ever be accepted from the empty graph");

  Graph g(params.n_nodes);
  Rng rng(seed);
  const auto n = static_cast<std::uint64_t>(params.n_nodes);
  std::uint64_t proposals = 0;
  while (g.edge_count() < params.n_edges) {
    if (proposals++ >= options.proposal_cap)
      throw Error(ErrorKind::IterationCapExceeded,
                  "proposal cap " + std::to_string(options.proposal_cap) + " exceeded with " +
                      std::to_string(g.edge_count()) + " of " + std::to_string(params.n_edges) +
                      " edges placed");
    const auto a = static_cast<Node>(rng.below(n));
    auto b = static_cast<Node>(rng.below(n - 1));
    if (b >= a) ++b;
    if (g.has_edge(a, b)) continue;

    EdgeProposal proposal;
    proposal.u = std::min(a, b);
    proposal.v = std::max(a, b);
    proposal.closeable_triangles = g.common_neighbor_count(a, b);
    proposal.acceptance_probability = edge_probability(params, proposal.closeable_triangles);
    const bool accepted = rng.uniform01() < proposal.acceptance_probability;
    if (options.observer) options.observer(g, proposal, accepted);
    if (accepted) g.add_edge(proposal.u, proposal.v);
  }
  return g;
}

std::vector<Graph> generate_batch(const ModelParams& params, std::uint64_t seed, std::size_t count,
                                  const GenerateOptions& options) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "generate_batch: count must be positive");
  params.validate();
  std::vector<Graph> out(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      out[i] = generate(params, derive_seed(seed, i), options);
    } catch (const Error& e) {
      throw e.with_context("sample " + std::to_string(i));
    }
  });
  return out;
}

}  // namespace mnsl
