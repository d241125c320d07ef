#pragma once

#include <span>

namespace mnsl {

/// Area under the ROC curve as the Mann–Whitney statistic: the fraction of
/// (positive, negative) pairs ranked correctly, ties counting one half.
/// Computed from average ranks in O(n log n). Throws SingleClass unless both
/// labels occur.
double auc(std::span<const double> scores, std::span<const int> labels);

inline constexpr double kLogLossClamp = 1e-6;

/// Mean negative binomial log-likelihood with scores clamped to
/// [clamp, 1 − clamp].
double log_loss(std::span<const double> scores, std::span<const int> labels,
                double clamp = kLogLossClamp);

}  // namespace mnsl
