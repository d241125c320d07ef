#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mnsl/stats.hpp"

namespace mnsl {

/// Dense row-major matrix of reals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const double> values);

  /// Rows at the given indices, in that order.
  Matrix select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Predictors plus 0/1 outcome. Label 0 is the "negative" model, 1 the
/// "positive" one.
struct Dataset {
  Matrix features;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dimension() const noexcept { return features.cols(); }
  std::size_t count_label(int label) const;

  /// Throws InvalidArgument on shape or label problems; with
  /// `require_both_classes`, DegenerateData if a class is missing.
  void validate(bool require_both_classes) const;

  Dataset subset(std::span<const std::size_t> indices) const;
};

Dataset dataset_from_summaries(const std::vector<LabeledSummary>& rows);

/// Per-column standardization with the sample (n−1) standard deviation.
/// Zero-variance columns are passed through unchanged.
class FeatureScaler {
 public:
  FeatureScaler() = default;
  static FeatureScaler fit(const Matrix& features);

  std::size_t dimension() const noexcept { return mean_.size(); }
  const std::vector<double>& mean() const noexcept { return mean_; }
  const std::vector<double>& scale() const noexcept { return scale_; }

  void apply_in_place(std::span<double> row) const;
  std::vector<double> apply(std::span<const double> row) const;
  Matrix apply(const Matrix& features) const;

  friend bool operator==(const FeatureScaler&, const FeatureScaler&) = default;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;  // 1 for pass-through columns
  std::vector<bool> passthrough_;
};

}  // namespace mnsl
