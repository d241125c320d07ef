#include "mnsl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mnsl/error.hpp"

namespace mnsl {

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_)
    throw Error(ErrorKind::DimensionMismatch, "row has " + std::to_string(values.size()) +
                                                  " columns, expected " + std::to_string(cols_));
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto src = row(indices[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

std::size_t Dataset::count_label(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void Dataset::validate(bool require_both_classes) const {
  if (features.rows() != labels.size())
    throw Error(ErrorKind::InvalidArgument, "feature rows and labels differ in length");
  for (int y : labels)
    if (y != 0 && y != 1) throw Error(ErrorKind::InvalidArgument, "labels must be 0 or 1");
  if (require_both_classes && (count_label(0) == 0 || count_label(1) == 0))
    throw Error(ErrorKind::DegenerateData, "training data must contain both classes");
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.features = features.select_rows(indices);
  out.labels.reserve(indices.size());
  for (auto i : indices) out.labels.push_back(labels[i]);
  return out;
}

Dataset dataset_from_summaries(const std::vector<LabeledSummary>& rows) {
  Dataset d;
  d.features = Matrix(0, SummaryVector::kDimension);
  for (const auto& r : rows) {
    d.features.append_row(r.summary.as_array());
    d.labels.push_back(r.model_index);
  }
  return d;
}

FeatureScaler FeatureScaler::fit(const Matrix& features) {
  if (features.rows() == 0) throw Error(ErrorKind::InvalidArgument, "scaler: empty data");
  const std::size_t n = features.rows();
  const std::size_t p = features.cols();
  FeatureScaler s;
  s.mean_.assign(p, 0.0);
  s.scale_.assign(p, 1.0);
  s.passthrough_.assign(p, true);
  for (std::size_t c = 0; c < p; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += features(r, c);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = features(r, c) - mean;
      ss += d * d;
    }
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (sd > 0.0 && std::isfinite(sd)) {
      s.mean_[c] = mean;
      s.scale_[c] = sd;
      s.passthrough_[c] = false;
    }
  }
  return s;
}

void FeatureScaler::apply_in_place(std::span<double> row) const {
  if (row.size() != mean_.size())
    throw Error(ErrorKind::DimensionMismatch, "scaler: feature dimension mismatch");
  for (std::size_t c = 0; c < row.size(); ++c)
    if (!passthrough_[c]) row[c] = (row[c] - mean_[c]) / scale_[c];
}

std::vector<double> FeatureScaler::apply(std::span<const double> row) const {
  std::vector<double> out(row.begin(), row.end());
  apply_in_place(out);
  return out;
}

Matrix FeatureScaler::apply(const Matrix& features) const {
  Matrix out = features;
  for (std::size_t r = 0; r < out.rows(); ++r) apply_in_place(out.row(r));
  return out;
}

}  // namespace mnsl
