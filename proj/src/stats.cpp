#include "mnsl/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "mnsl/error.hpp"

namespace mnsl {

std::uint64_t triangle_count(const Graph& g) {
  if (g.node_count() <= Graph::kBitIndexLimit) {
    // Every triangle is seen once from each of its three edges.
    std::uint64_t closed = 0;
    for (Node u = 0; u < g.node_count(); ++u)
      for (Node v : g.neighbors(u))
        if (u < v) closed += g.common_neighbor_count(u, v);
    return closed / 3;
  }
  // Each triangle u < v < w is counted once, from its smallest edge (u, v).
  std::uint64_t count = 0;
  for (Node u = 0; u < g.node_count(); ++u) {
    const auto nu = g.neighbors(u);
    for (Node v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      auto i = std::upper_bound(nu.begin(), nu.end(), v);
      auto j = std::upper_bound(nv.begin(), nv.end(), v);
      while (i != nu.end() && j != nv.end()) {
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
    }
  }
  return count;
}

std::uint64_t neighbor_edge_count(const Graph& g, Node v) {
  if (v >= g.node_count()) throw Error(ErrorKind::InvalidArgument, "node out of range");
  std::uint64_t twice = 0;
  for (Node u : g.neighbors(v)) twice += g.common_neighbor_count(u, v);
  return twice / 2;
}

double local_clustering(const Graph& g, Node v) {
  if (v >= g.node_count()) throw Error(ErrorKind::InvalidArgument, "node out of range");
  const auto d = static_cast<double>(g.degree(v));
  if (d < 2) return 0.0;
  return 2.0 * static_cast<double>(neighbor_edge_count(g, v)) / (d * (d - 1.0));
}

double avg_clustering(const Graph& g) {
  if (g.node_count() == 0) return 0.0;
  double sum = 0.0;
  for (Node v = 0; v < g.node_count(); ++v) sum += local_clustering(g, v);
  return sum / static_cast<double>(g.node_count());
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw Error(ErrorKind::InvalidArgument, "quantile of empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto i = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(i);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

DegreeQuartiles degree_quartiles(const Graph& g) {
  std::vector<double> degrees(g.node_count());
  for (Node v = 0; v < g.node_count(); ++v) degrees[v] = static_cast<double>(g.degree(v));
  std::sort(degrees.begin(), degrees.end());
  return {quantile_sorted(degrees, 0.25), quantile_sorted(degrees, 0.50),
          quantile_sorted(degrees, 0.75)};
}

SummaryVector summarize(const Graph& g) {
  const auto q = degree_quartiles(g);
  return {triangle_count(g), avg_clustering(g), q.q25, q.q50, q.q75};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(ErrorKind::Parse, "not a number: '" + text + "'");
  return x;
}

void write_summary_csv(std::ostream& out, const std::vector<LabeledSummary>& rows) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out << r.model_index << ',' << s.triangles << ',' << format_double(s.avg_clustering) << ','
        << format_double(s.deg_q25) << ',' << format_double(s.deg_q50) << ','
        << format_double(s.deg_q75) << '\n';
  }
}

std::vector<LabeledSummary> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "dataset csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSummaryCsvHeader) throw Error(ErrorKind::Parse, "dataset csv: unexpected header");

  std::vector<LabeledSummary> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 6)
      throw Error(ErrorKind::Parse, "dataset csv line " + std::to_string(line_no) +
                                        ": expected 6 fields");
    try {
      LabeledSummary r;
      const double label = parse_double(fields[0]);
      if (label != 0.0 && label != 1.0) throw Error(ErrorKind::Parse, "label must be 0 or 1");
      r.model_index = static_cast<int>(label);
      const double tri = parse_double(fields[1]);
      if (tri < 0 || tri != std::floor(tri)) throw Error(ErrorKind::Parse, "bad triangle count");
      r.summary.triangles = static_cast<std::uint64_t>(tri);
      r.summary.avg_clustering = parse_double(fields[2]);
      r.summary.deg_q25 = parse_double(fields[3]);
      r.summary.deg_q50 = parse_double(fields[4]);
      r.summary.deg_q75 = parse_double(fields[5]);
      rows.push_back(r);
    } catch (const Error& e) {
      throw e.with_context("dataset csv line " + std::to_string(line_no));
    }
  }
  return rows;
}

}  // namespace mnsl
