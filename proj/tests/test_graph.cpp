#include <gtest/gtest.h>

#include <sstream>

#include "mnsl/error.hpp"
#include "mnsl/graph.hpp"
#include "oracles.hpp"

using mnsl::ErrorKind;
using mnsl::Graph;

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

}  // namespace

TEST(Graph, AddEdgeKeepsBothDirections) {
  Graph g(4);
  g.add_edge(2, 0);
  g.add_edge(1, 2);
  EXPECT_EQ(g.edge_count(), 2U);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.degree(2), 2U);
  const std::vector<mnsl::Edge> expected{{0, 2}, {1, 2}};
  EXPECT_EQ(g.edges(), expected);
}

TEST(Graph, RejectsSelfLoopsDuplicatesAndRange) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_EQ(kind_of([&] { g.add_edge(1, 1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { g.add_edge(1, 0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { g.add_edge(0, 3); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(g.edge_count(), 1U);
}

TEST(Graph, CommonNeighborsMatchBruteForce) {
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    const auto g = oracle::random_graph(3 + seed % 15, 0.35, seed);
    for (mnsl::Node u = 0; u < g.node_count(); ++u)
      for (mnsl::Node v = 0; v < g.node_count(); ++v)
        if (u != v) ASSERT_EQ(g.common_neighbor_count(u, v), oracle::common_neighbors(g, u, v));
  }
}

TEST(Graph, CommonNeighborsWithoutBitIndex) {
  // Above the bit-matrix limit the merge path is used.
  const std::size_t n = Graph::kBitIndexLimit + 10;
  Graph g(n);
  for (mnsl::Node w = 2; w < 60; ++w) {
    g.add_edge(0, w);
    if (w % 3 == 0) g.add_edge(1, w);
  }
  g.add_edge(1, static_cast<mnsl::Node>(n - 1));
  EXPECT_EQ(g.common_neighbor_count(0, 1), 19U);
  EXPECT_TRUE(g.has_edge(static_cast<mnsl::Node>(n - 1), 1));
  EXPECT_FALSE(g.has_edge(0, static_cast<mnsl::Node>(n - 1)));
}

TEST(EdgeList, WritesHeaderAndSortedPairs) {
  Graph g(4);
  g.add_edge(3, 1);
  g.add_edge(0, 2);
  EXPECT_EQ(mnsl::to_edge_list(g), "4 2\n0 2\n1 3\n");
}

TEST(EdgeList, RoundTripIsExact) {
  for (std::uint32_t seed = 0; seed < 25; ++seed) {
    const auto g = oracle::random_graph(1 + seed, 0.3, 1000 + seed);
    const std::string text = mnsl::to_edge_list(g);
    std::istringstream in(text);
    const Graph back = mnsl::read_edge_list(in);
    EXPECT_EQ(back, g);
    EXPECT_EQ(mnsl::to_edge_list(back), text);
  }
}

TEST(EdgeList, AcceptsAnyOrientationAndOrder) {
  std::istringstream in("3 2\n2 1\n1 0\n");
  const Graph g = mnsl::read_edge_list(in);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 2));
}

TEST(EdgeList, MalformedInputIsAParseError) {
  const std::vector<std::string> bad{
      "",            "x 1\n",           "3\n",        "3 2\n0 1\n",  "3 1\n0 1\n1 2\n",
      "3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 3\n", "3 1\n0 -1\n", "3 1\n0 a\n",
  };
  for (const auto& text : bad) {
    std::istringstream in(text);
    EXPECT_EQ(kind_of([&] { (void)mnsl::read_edge_list(in); }), ErrorKind::Parse) << text;
  }
}

TEST(EdgeList, MissingFileIsAnIoError) {
  EXPECT_EQ(kind_of([] { (void)mnsl::read_edge_list_file("/nonexistent/dir/g.txt"); }),
            ErrorKind::Io);
}
