#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mnsl/dataset.hpp"
#include "mnsl/ensemble.hpp"
#include "mnsl/learners.hpp"

namespace mnsl {

struct UQConfig {
  std::size_t n_splits = 10;
  /// Library of the confidence regression; empty selects confidence_library().
  std::vector<LearnerSpec> regression_library;
  std::size_t sl_folds = 5;
  std::uint64_t seed = 0;
  NelderMeadOptions search;

  void validate() const;
};

/// w[i] = 1 iff the SL trained without sample i's split classified it
/// correctly at cutoff 0.5.
struct CorrectnessLabels {
  std::vector<int> w;
  double mean() const;
};

struct OobResult {
  CorrectnessLabels labels;
  FoldAssignment splits;
  std::vector<double> split_accuracy;
  std::vector<double> oob_scores;  // full-SL score of each row from its out-of-split model
};

/// Receives the training rows of each split's complement model.
using SplitTrainingObserver = std::function<void(std::size_t split, std::span<const std::size_t> rows)>;

/// Splits the data into B stratified parts; each part is classified by a
/// full SL fitted on the other B − 1 parts.
OobResult compute_oob_labels(const Dataset& d, std::span<const LearnerSpec> library,
                             const UQConfig& cfg, const SplitTrainingObserver& observer = {});

/// Regression of W on the predictors. Either an SL minimizing the
/// cross-validated log-loss over the regression library, or, when W is
/// constant or too unbalanced to stratify, the constant observed rate.
class UQModel {
 public:
  /// `dimension` 0 skips the feature-count check.
  static UQModel constant(double rate, std::size_t dimension = 0);
  static UQModel from_super_learner(SuperLearnerModel sl);

  bool is_constant() const noexcept { return !sl_.has_value(); }
  double constant_rate() const noexcept { return rate_; }
  const std::optional<SuperLearnerModel>& super_learner() const noexcept { return sl_; }

  /// Estimated P(selection correct | x), clamped to [1e-6, 1 − 1e-6].
  double estimate(std::span<const double> x) const;

 private:
  std::optional<SuperLearnerModel> sl_;
  double rate_ = 0.5;
  std::size_t dimension_ = 0;
};

UQModel fit_uq(const Dataset& d, const CorrectnessLabels& w, const UQConfig& cfg);

double estimate_confidence(const UQModel& m, std::span<const double> x);
double estimate_confidence(const UQModel& m, const SummaryVector& x);

}  // namespace mnsl
