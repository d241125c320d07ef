#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mnsl/error.hpp"
#include "mnsl/netgen.hpp"
#include "mnsl/rng.hpp"
#include "mnsl/stats.hpp"
#include "oracles.hpp"

using mnsl::Graph;

namespace {

Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (mnsl::Node v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph path(std::size_t n) {
  Graph g(n);
  for (mnsl::Node v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle(std::size_t n) {
  Graph g = path(n);
  g.add_edge(0, static_cast<mnsl::Node>(n - 1));
  return g;
}

double oracle_quantile(std::vector<double> x, double q) {
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

}  // namespace

TEST(Triangles, Cliques) {
  EXPECT_EQ(mnsl::triangle_count(oracle::complete_graph(3)), 1U);
  EXPECT_EQ(mnsl::triangle_count(oracle::complete_graph(4)), 4U);
  EXPECT_EQ(mnsl::triangle_count(oracle::complete_graph(10)), 120U);
  EXPECT_EQ(mnsl::triangle_count(star(6)), 0U);
  EXPECT_EQ(mnsl::triangle_count(Graph(5)), 0U);
}

TEST(Triangles, MatchBruteForce) {
  for (std::uint32_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_graph(1 + seed % 12, 0.1 + 0.8 * (seed % 7) / 7.0, seed);
    ASSERT_EQ(mnsl::triangle_count(g), oracle::triangles(g)) << seed;
  }
}

TEST(Triangles, LargeGraphWithoutBitIndex) {
  // Beyond the bit-matrix limit: a clique on the first 8 nodes plus a long tail.
  Graph g(Graph::kBitIndexLimit + 100);
  for (mnsl::Node u = 0; u < 8; ++u)
    for (mnsl::Node v = u + 1; v < 8; ++v) g.add_edge(u, v);
  for (mnsl::Node v = 8; v + 1 < g.node_count(); ++v) g.add_edge(v, v + 1);
  EXPECT_EQ(mnsl::triangle_count(g), 56U);
  EXPECT_DOUBLE_EQ(mnsl::local_clustering(g, 3), 1.0);
}

TEST(Clustering, WorkedValues) {
  EXPECT_DOUBLE_EQ(mnsl::local_clustering(star(5), 0), 0.0);
  EXPECT_DOUBLE_EQ(mnsl::local_clustering(star(5), 1), 0.0);
  EXPECT_DOUBLE_EQ(mnsl::local_clustering(oracle::complete_graph(3), 0), 1.0);
  EXPECT_DOUBLE_EQ(mnsl::avg_clustering(oracle::complete_graph(3)), 1.0);
  EXPECT_DOUBLE_EQ(mnsl::avg_clustering(Graph(6)), 0.0);
  EXPECT_DOUBLE_EQ(mnsl::avg_clustering(path(6)), 0.0);
  // Triangle with one pendant: nodes 0,1 have C = 1, node 2 has C = 1/3.
  Graph g = oracle::complete_graph(3);
  Graph h(4);
  for (const auto& [u, v] : g.edges()) h.add_edge(u, v);
  h.add_edge(2, 3);
  EXPECT_DOUBLE_EQ(mnsl::local_clustering(h, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(mnsl::avg_clustering(h), (1.0 + 1.0 + 1.0 / 3.0) / 4.0);
}

TEST(Clustering, MatchesBruteForce) {
  for (std::uint32_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_graph(1 + seed % 12, 0.5, 500 + seed);
    double sum = 0.0;
    for (mnsl::Node v = 0; v < g.node_count(); ++v) {
      const double c = oracle::local_clustering(g, v);
      ASSERT_NEAR(mnsl::local_clustering(g, v), c, 1e-12);
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, 1.0);
      sum += c;
    }
    ASSERT_NEAR(mnsl::avg_clustering(g), sum / static_cast<double>(g.node_count()), 1e-12);
  }
}

TEST(Quantiles, InterpolatedOrderStatistics) {
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mnsl::quantile_sorted(x, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(mnsl::quantile_sorted(x, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(mnsl::quantile_sorted(x, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(mnsl::quantile_sorted({7}, 0.75), 7.0);
  const auto q = mnsl::degree_quartiles(path(3));
  EXPECT_DOUBLE_EQ(q.q25, 1.0);
  EXPECT_DOUBLE_EQ(q.q50, 1.0);
  EXPECT_DOUBLE_EQ(q.q75, 1.5);
}

TEST(Quantiles, RegularGraphsHaveFlatQuartiles) {
  for (const auto& [g, k] : {std::pair{cycle(9), 2.0}, std::pair{oracle::complete_graph(7), 6.0}}) {
    const auto q = mnsl::degree_quartiles(g);
    EXPECT_DOUBLE_EQ(q.q25, k);
    EXPECT_DOUBLE_EQ(q.q50, k);
    EXPECT_DOUBLE_EQ(q.q75, k);
  }
}

TEST(Quantiles, MatchOracleAndAreOrdered) {
  for (std::uint32_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_graph(1 + seed % 15, 0.3, 900 + seed);
    std::vector<double> deg;
    for (mnsl::Node v = 0; v < g.node_count(); ++v) deg.push_back(static_cast<double>(g.degree(v)));
    const auto q = mnsl::degree_quartiles(g);
    ASSERT_NEAR(q.q25, oracle_quantile(deg, 0.25), 1e-12);
    ASSERT_NEAR(q.q50, oracle_quantile(deg, 0.5), 1e-12);
    ASSERT_NEAR(q.q75, oracle_quantile(deg, 0.75), 1e-12);
    ASSERT_LE(q.q25, q.q50);
    ASSERT_LE(q.q50, q.q75);
  }
}

TEST(Summary, TriangleGraph) {
  const auto s = mnsl::summarize(oracle::complete_graph(3));
  EXPECT_EQ(s.triangles, 1U);
  EXPECT_DOUBLE_EQ(s.avg_clustering, 1.0);
  EXPECT_DOUBLE_EQ(s.deg_q25, 2.0);
  EXPECT_DOUBLE_EQ(s.deg_q50, 2.0);
  EXPECT_DOUBLE_EQ(s.deg_q75, 2.0);
  EXPECT_EQ(mnsl::summarize(Graph(4)), mnsl::SummaryVector{});
}

TEST(Summary, InvariantUnderRelabeling) {
  mnsl::Rng rng(3);
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const auto g = oracle::random_graph(5 + seed % 20, 0.3, 4000 + seed);
    std::vector<mnsl::Node> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    const auto a = mnsl::summarize(g);
    const auto b = mnsl::summarize(oracle::relabel(g, perm));
    EXPECT_EQ(a.triangles, b.triangles);
    EXPECT_NEAR(a.avg_clustering, b.avg_clustering, 1e-12);
    EXPECT_EQ(a.deg_q25, b.deg_q25);
    EXPECT_EQ(a.deg_q50, b.deg_q50);
    EXPECT_EQ(a.deg_q75, b.deg_q75);
  }
}

TEST(Summary, NeighborEdgesCountEachTriangleThreeTimes) {
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const auto g = oracle::random_graph(4 + seed % 25, 0.35, 6000 + seed);
    std::uint64_t sum = 0;
    for (mnsl::Node v = 0; v < g.node_count(); ++v) sum += mnsl::neighbor_edge_count(g, v);
    EXPECT_EQ(sum, 3 * mnsl::triangle_count(g));
  }
}

TEST(Summary, AddingAnEdgeNeverRemovesTriangles) {
  mnsl::Rng rng(17);
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    Graph g = oracle::random_graph(15, 0.2, 7000 + seed);
    for (int k = 0; k < 10; ++k) {
      const auto u = static_cast<mnsl::Node>(rng.below(15));
      const auto v = static_cast<mnsl::Node>(rng.below(15));
      if (u == v || g.has_edge(u, v)) continue;
      const auto before = mnsl::triangle_count(g);
      const auto closed = g.common_neighbor_count(u, v);
      g.add_edge(u, v);
      EXPECT_EQ(mnsl::triangle_count(g), before + closed);
    }
  }
}

TEST(Summary, GeneratedNetworksHaveOracleStatistics) {
  mnsl::ModelParams p;
  p.n_nodes = 40;
  p.n_edges = 150;
  p.p2 = 0.05;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Graph g = mnsl::generate(p, s);
    const auto sv = mnsl::summarize(g);
    EXPECT_EQ(sv.triangles, oracle::triangles(g));
    double sum = 0.0;
    for (mnsl::Node v = 0; v < g.node_count(); ++v) sum += oracle::local_clustering(g, v);
    EXPECT_NEAR(sv.avg_clustering, sum / 40.0, 1e-12);
  }
}

TEST(SummaryCsv, HeaderAndRoundTrip) {
  std::vector<mnsl::LabeledSummary> rows;
  for (std::uint32_t seed = 0; seed < 20; ++seed)
    rows.push_back({static_cast<int>(seed % 2),
                    mnsl::summarize(oracle::random_graph(10 + seed, 0.3, seed))});
  std::ostringstream out;
  mnsl::write_summary_csv(out, rows);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), mnsl::kSummaryCsvHeader);
  std::istringstream in(text);
  const auto back = mnsl::read_summary_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].model_index, rows[i].model_index);
    EXPECT_EQ(back[i].summary, rows[i].summary);  // bit-exact doubles
  }
}

TEST(SummaryCsv, DoublesRoundTripExactly) {
  mnsl::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform01() * std::pow(10.0, static_cast<int>(rng.below(20)) - 10);
    EXPECT_EQ(mnsl::parse_double(mnsl::format_double(x)), x);
  }
}

TEST(SummaryCsv, RejectsMalformedRows) {
  for (const std::string text :
       {std::string("wrong,header\n"), std::string(mnsl::kSummaryCsvHeader) + "\n0,1,0.5,1,2\n",
        std::string(mnsl::kSummaryCsvHeader) + "\n0,x,0.5,1,2,3\n"}) {
    std::istringstream in(text);
    EXPECT_THROW((void)mnsl::read_summary_csv(in), mnsl::Error) << text;
  }
}
