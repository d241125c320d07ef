#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mnsl/dataset.hpp"

namespace mnsl {

/// Brute-force k-nearest-neighbor voter on standardized features.
class KnnModel {
 public:
  static KnnModel fit(const Dataset& d, std::size_t k);

  /// Fraction of the k nearest training rows labeled 1. Distance ties go to
  /// the lower training-row index.
  double score(std::span<const double> x) const;

  /// Training-row indices of the k nearest neighbors, nearest first.
  std::vector<std::size_t> neighbors(std::span<const double> x) const;

  std::size_t k() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return scaler_.dimension(); }
  const FeatureScaler& scaler() const noexcept { return scaler_; }

 private:
  FeatureScaler scaler_;
  Matrix points_;
  std::vector<int> labels_;
  std::size_t k_ = 0;
};

}  // namespace mnsl
