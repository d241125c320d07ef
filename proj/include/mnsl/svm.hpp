#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mnsl/dataset.hpp"

namespace mnsl {

struct SvmOptions {
  double cost = 1.0;
  double gamma = 0.0;  // 0 selects 1/p
  double tolerance = 1e-3;
  std::uint64_t max_iterations = 1'000'000;
  std::size_t cache_bytes = std::size_t{1} << 30;
};

/// Soft-margin C-SVM with an RBF kernel exp(−gamma·|a − b|²) on standardized
/// features, trained by SMO with second-order working-set selection. Stops
/// when the maximal KKT violation falls below the tolerance.
class SvmModel {
 public:
  static SvmModel fit(const Dataset& d, const SvmOptions& options);

  /// f(x) = Σ α_i y_i K(x_i, x) − ρ, positive for class 1.
  double decision_value(std::span<const double> x) const;

  /// 1 / (1 + exp(−f(x))).
  double score(std::span<const double> x) const;

  std::size_t dimension() const noexcept { return scaler_.dimension(); }
  std::size_t support_vector_count() const noexcept { return support_.rows(); }
  std::uint64_t iterations() const noexcept { return iterations_; }
  double gamma() const noexcept { return gamma_; }
  double rho() const noexcept { return rho_; }

 private:
  FeatureScaler scaler_;
  Matrix support_;            // scaled support vectors
  std::vector<double> coef_;  // α_i y_i
  double rho_ = 0.0;
  double gamma_ = 0.0;
  std::uint64_t iterations_ = 0;
};

}  // namespace mnsl
