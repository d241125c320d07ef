#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "mnsl/error.hpp"
#include "mnsl/netgen.hpp"
#include "mnsl/rng.hpp"
#include "oracles.hpp"

using mnsl::ErrorKind;
using mnsl::Graph;
using mnsl::ModelParams;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const mnsl::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no mnsl::Error thrown";
  return ErrorKind::Internal;
}

ModelParams params(std::size_t n, std::size_t m, double p0, double p1, double p2) {
  ModelParams p;
  p.n_nodes = n;
  p.n_edges = m;
  p.p0 = p0;
  p.p1 = p1;
  p.p2 = p2;
  return p;
}

}  // namespace

TEST(EdgeProbability, WorkedValues) {
  const auto p = params(100, 500, 0.3, 0.1, 0.05);
  EXPECT_DOUBLE_EQ(mnsl::edge_probability(p, 0), 0.3);
  EXPECT_DOUBLE_EQ(mnsl::edge_probability(p, 1), 0.4);
  EXPECT_DOUBLE_EQ(mnsl::edge_probability(p, 3), 0.5);
  EXPECT_DOUBLE_EQ(mnsl::edge_probability(p, 20), 1.0);
}

TEST(EdgeProbability, NondecreasingAndBounded) {
  mnsl::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = params(10, 5, rng.uniform01(), rng.uniform01(), rng.uniform01() * 0.2);
    double prev = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const double q = mnsl::edge_probability(p, t);
      ASSERT_GE(q, prev);
      ASSERT_LE(q, 1.0);
      ASSERT_GE(q, p.p0);
      prev = q;
    }
  }
}

TEST(ClosableTriangles, PathAndEmpty) {
  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  EXPECT_EQ(mnsl::count_closeable_triangles(path, 0, 2), 1U);
  Graph empty(5);
  EXPECT_EQ(mnsl::count_closeable_triangles(empty, 1, 4), 0U);
  EXPECT_EQ(kind_of([&] { (void)mnsl::count_closeable_triangles(path, 0, 1); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { (void)mnsl::count_closeable_triangles(path, 2, 2); }),
            ErrorKind::InvalidArgument);
}

TEST(ClosableTriangles, MatchesBruteForce) {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const auto g = oracle::random_graph(3 + seed % 10, 0.4, 77 + seed);
    for (mnsl::Node u = 0; u < g.node_count(); ++u)
      for (mnsl::Node v = u + 1; v < g.node_count(); ++v)
        if (!g.has_edge(u, v))
          ASSERT_EQ(mnsl::count_closeable_triangles(g, u, v), oracle::common_neighbors(g, u, v));
  }
}

TEST(Generate, TwoNodesForcesTheOnlyEdge) {
  const Graph g = mnsl::generate(params(2, 1, 1.0, 0.0, 0.0), 3);
  EXPECT_EQ(g.edge_count(), 1U);
  EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(Generate, ReachesTheEdgeTarget) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = mnsl::generate(params(100, 500, 0.3, 0.1, 0.05), seed);
    EXPECT_EQ(g.node_count(), 100U);
    EXPECT_EQ(g.edge_count(), 500U);
    for (const auto& [u, v] : g.edges()) EXPECT_LT(u, v);
  }
}

TEST(Generate, CompleteGraphTarget) {
  const Graph g = mnsl::generate(params(12, 66, 1.0, 0.0, 0.0), 5);
  EXPECT_EQ(g, oracle::complete_graph(12));
}

TEST(Generate, SameSeedSameGraph) {
  const auto p = params(100, 1000, 0.3, 0.1, 0.03);
  EXPECT_EQ(mnsl::generate(p, 11), mnsl::generate(p, 11));
  EXPECT_NE(mnsl::generate(p, 11), mnsl::generate(p, 12));
}

TEST(Generate, PureRandomAcceptanceIsUniformOverGraphs) {
  // With p1 = p2 = 0 every 2-edge graph on 4 nodes is equally likely.
  const auto p = params(4, 2, 0.3, 0.0, 0.0);
  std::map<std::vector<mnsl::Edge>, int> counts;
  const int draws = 15000;
  for (int s = 0; s < draws; ++s) ++counts[mnsl::generate(p, mnsl::derive_seed(99, s)).edges()];
  ASSERT_EQ(counts.size(), 15U);
  const double expected = draws / 15.0;
  double chi2 = 0.0;
  for (const auto& [edges, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(14);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.001) << "chi2 = " << chi2;
}

TEST(Generate, ProposalsUseThePreAcceptanceGraph) {
  const auto p = params(30, 120, 0.2, 0.3, 0.1);
  std::size_t accepted = 0;
  std::size_t proposals = 0;
  mnsl::GenerateOptions opts;
  opts.observer = [&](const Graph& g, const mnsl::EdgeProposal& e, bool ok) {
    ++proposals;
    ASSERT_FALSE(g.has_edge(e.u, e.v));
    ASSERT_EQ(g.edge_count(), accepted);
    ASSERT_EQ(e.closeable_triangles, oracle::common_neighbors(g, e.u, e.v));
    ASSERT_DOUBLE_EQ(e.acceptance_probability, mnsl::edge_probability(p, e.closeable_triangles));
    accepted += ok;
  };
  const Graph g = mnsl::generate(p, 4, opts);
  EXPECT_EQ(accepted, 120U);
  EXPECT_GE(proposals, accepted);
  EXPECT_EQ(g.edge_count(), 120U);
}

TEST(Generate, AcceptanceRatesFollowTheClosureRule) {
  const auto p = params(40, 300, 0.2, 0.3, 0.1);
  std::map<std::size_t, std::pair<double, double>> by_t;  // t -> (accepted, proposed)
  mnsl::GenerateOptions opts;
  opts.observer = [&](const Graph&, const mnsl::EdgeProposal& e, bool ok) {
    auto& [a, n] = by_t[std::min<std::size_t>(e.closeable_triangles, 2)];
    a += ok;
    n += 1;
  };
  for (std::uint64_t s = 0; s < 40; ++s) (void)mnsl::generate(p, s, opts);
  for (std::size_t t = 0; t <= 1; ++t) {
    const auto [a, n] = by_t.at(t);
    const double q = mnsl::edge_probability(p, t);
    ASSERT_GT(n, 1000);
    EXPECT_NEAR(a / n, q, 4 * std::sqrt(q * (1 - q) / n)) << "t = " << t;
  }
}

TEST(Generate, InvalidParameters) {
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(10, 46, 0.3, 0.1, 0.0), 0); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(1, 1, 0.3, 0.1, 0.0), 0); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(10, 0, 0.3, 0.1, 0.0), 0); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(10, 5, 1.3, 0.1, 0.0), 0); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(10, 5, 0.3, -0.1, 0.0), 0); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(10, 5, 0.3, 0.1, std::nan("")), 0); }),
            ErrorKind::InvalidParams);
}

TEST(Generate, ZeroBaseRateNeverStarts) {
  EXPECT_EQ(kind_of([] { (void)mnsl::generate(params(100, 500, 0.0, 0.1, 0.05), 0); }),
            ErrorKind::NonTerminating);
}

TEST(Generate, ProposalCapIsEnforced) {
  mnsl::GenerateOptions opts;
  opts.proposal_cap = 1000;
  EXPECT_EQ(kind_of([&] { (void)mnsl::generate(params(100, 4950, 0.3, 0.1, 0.05), 0, opts); }),
            ErrorKind::IterationCapExceeded);
}

TEST(GenerateBatch, ElementsUseDerivedSeeds) {
  const auto p = params(100, 500, 0.3, 0.1, 0.01);
  const auto one = mnsl::generate_batch(p, 21, 1);
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one[0], mnsl::generate(p, mnsl::derive_seed(21, 0)));
  const auto a = mnsl::generate_batch(p, 21, 3);
  const auto b = mnsl::generate_batch(p, 21, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[2], mnsl::generate(p, mnsl::derive_seed(21, 2)));
  EXPECT_NE(a[0], a[1]);
}

TEST(GenerateBatch, HundredGraphsAllOnTarget) {
  const auto gs = mnsl::generate_batch(params(100, 500, 0.3, 0.1, 0.05), 8, 100);
  ASSERT_EQ(gs.size(), 100U);
  for (const auto& g : gs) EXPECT_EQ(g.edge_count(), 500U);
}

TEST(GenerateBatch, ErrorsNameTheSample) {
  try {
    (void)mnsl::generate_batch(params(100, 500, 0.0, 0.1, 0.05), 8, 3);
    FAIL() << "expected an error";
  } catch (const mnsl::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonTerminating);
    EXPECT_NE(std::string(e.what()).find("sample 0"), std::string::npos) << e.what();
  }
}
