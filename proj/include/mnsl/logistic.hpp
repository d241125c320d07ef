#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mnsl/dataset.hpp"

namespace mnsl {

struct LogisticOptions {
  std::size_t max_iterations = 100;
  double tolerance = 1e-10;
  /// L2 penalty on the slopes (not the intercept); keeps Newton steps finite
  /// on separable data.
  double ridge = 1e-6;
};

/// Logistic regression on standardized features fitted by Newton–Raphson
/// (IRLS) with step halving.
class LogisticModel {
 public:
  static LogisticModel fit(const Dataset& d, const LogisticOptions& options = {});

  double linear_predictor(std::span<const double> x) const;
  double score(std::span<const double> x) const;

  std::size_t dimension() const noexcept { return scaler_.dimension(); }
  double intercept() const noexcept { return intercept_; }
  const std::vector<double>& coefficients() const noexcept { return coef_; }

 private:
  FeatureScaler scaler_;
  double intercept_ = 0.0;
  std::vector<double> coef_;
};

/// Solves the dense symmetric positive-definite system A·x = b in place by
/// Cholesky factorization. Returns false if A is not positive definite.
bool solve_spd(std::vector<double>& a, std::vector<double>& b, std::size_t n);

}  // namespace mnsl
