#include "mnsl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mnsl/error.hpp"

namespace mnsl {

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw Error(ErrorKind::DimensionMismatch, "auc: scores and labels differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::size_t tied_positives = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      tied_positives += labels[order[j]] == 1;
      ++j;
    }
    // Ranks i+1 .. j share their average (i + 1 + j) / 2.
    positive_rank_sum += static_cast<double>(tied_positives) * 0.5 * static_cast<double>(i + 1 + j);
    positives += tied_positives;
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0)
    throw Error(ErrorKind::SingleClass, "auc: labels contain a single class");
  const double np = static_cast<double>(positives);
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(negatives));
}

double log_loss(std::span<const double> scores, std::span<const int> labels, double clamp) {
  if (scores.size() != labels.size())
    throw Error(ErrorKind::DimensionMismatch, "log_loss: scores and labels differ in length");
  if (scores.empty()) throw Error(ErrorKind::InvalidArgument, "log_loss: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = std::clamp(scores[i], clamp, 1.0 - clamp);
    sum -= labels[i] == 1 ? std::log(p) : std::log1p(-p);
  }
  return sum / static_cast<double>(scores.size());
}

}  // namespace mnsl
