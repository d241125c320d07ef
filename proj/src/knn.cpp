#include "mnsl/knn.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "mnsl/error.hpp"

namespace mnsl {

KnnModel KnnModel::fit(const Dataset& d, std::size_t k) {
  d.validate(false);
  if (d.size() == 0) throw Error(ErrorKind::InvalidArgument, "knn: empty training data");
  if (k == 0 || k > d.size())
    throw Error(ErrorKind::InvalidArgument, "knn: k = " + std::to_string(k) +
                                                " must lie in [1, " + std::to_string(d.size()) + "]");
  KnnModel m;
  m.scaler_ = FeatureScaler::fit(d.features);
  m.points_ = m.scaler_.apply(d.features);
  m.labels_ = d.labels;
  m.k_ = k;
  return m;
}

std::vector<std::size_t> KnnModel::neighbors(std::span<const double> x) const {
  const auto q = scaler_.apply(x);
  std::vector<std::pair<double, std::size_t>> dist(points_.rows());
  for (std::size_t i = 0; i < points_.rows(); ++i) {
    const auto p = points_.row(i);
    double s = 0.0;
    for (std::size_t c = 0; c < q.size(); ++c) {
      const double diff = p[c] - q[c];
      s += diff * diff;
    }
    dist[i] = {s, i};
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t j = 0; j < k_; ++j) out[j] = dist[j].second;
  return out;
}

double KnnModel::score(std::span<const double> x) const {
  std::size_t positives = 0;
  for (auto i : neighbors(x)) positives += labels_[i] == 1;
  return static_cast<double>(positives) / static_cast<double>(k_);
}

}  // namespace mnsl
