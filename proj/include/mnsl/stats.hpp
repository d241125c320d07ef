#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mnsl/graph.hpp"

namespace mnsl {

/// The five predictors, always in this order.
struct SummaryVector {
  static constexpr std::size_t kDimension = 5;

  std::uint64_t triangles = 0;
  double avg_clustering = 0.0;
  double deg_q25 = 0.0;
  double deg_q50 = 0.0;
  double deg_q75 = 0.0;

  std::array<double, kDimension> as_array() const {
    return {static_cast<double>(triangles), avg_clustering, deg_q25, deg_q50, deg_q75};
  }

  friend bool operator==(const SummaryVector&, const SummaryVector&) = default;
};

struct DegreeQuartiles {
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
};

std::uint64_t triangle_count(const Graph& g);

/// Number of edges among the neighbors of v.
std::uint64_t neighbor_edge_count(const Graph& g, Node v);

/// 2·e(v) / (d(v)·(d(v)−1)); 0 when d(v) < 2.
double local_clustering(const Graph& g, Node v);

/// Mean of local_clustering over every node, low-degree nodes counting 0.
double avg_clustering(const Graph& g);

/// Linear interpolation between order statistics at h = (n−1)·q.
double quantile_sorted(const std::vector<double>& sorted, double q);
DegreeQuartiles degree_quartiles(const Graph& g);

SummaryVector summarize(const Graph& g);

/// One dataset row: the generating model index plus its summary.
struct LabeledSummary {
  int model_index = 0;
  SummaryVector summary;

  friend bool operator==(const LabeledSummary&, const LabeledSummary&) = default;
};

inline constexpr const char* kSummaryCsvHeader =
    "model_index,triangles,avg_clustering,deg_q25,deg_q50,deg_q75";

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);
double parse_double(const std::string& text);

void write_summary_csv(std::ostream& out, const std::vector<LabeledSummary>& rows);
std::vector<LabeledSummary> read_summary_csv(std::istream& in);

}  // namespace mnsl
