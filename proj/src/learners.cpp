#include "mnsl/learners.hpp"

#include <algorithm>
#include <cctype>

#include "mnsl/error.hpp"

namespace mnsl {

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::Knn: return "KNN";
    case LearnerKind::Svm: return "SVM";
    case LearnerKind::RandomForest: return "RF";
    case LearnerKind::Logistic: return "LR";
  }
  return "?";
}

LearnerKind learner_kind_from_string(const std::string& name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "KNN") return LearnerKind::Knn;
  if (up == "SVM") return LearnerKind::Svm;
  if (up == "RF") return LearnerKind::RandomForest;
  if (up == "LR" || up == "LOGISTIC") return LearnerKind::Logistic;
  throw Error(ErrorKind::InvalidArgument, "unknown learner '" + name + "'");
}

LearnerSpec LearnerSpec::knn(std::size_t k) {
  LearnerSpec s;
  s.kind = LearnerKind::Knn;
  s.knn_k = k;
  return s;
}

LearnerSpec LearnerSpec::svm() {
  LearnerSpec s;
  s.kind = LearnerKind::Svm;
  return s;
}

LearnerSpec LearnerSpec::random_forest(std::uint64_t seed) {
  LearnerSpec s;
  s.kind = LearnerKind::RandomForest;
  s.seed = seed;
  return s;
}

LearnerSpec LearnerSpec::logistic() {
  LearnerSpec s;
  s.kind = LearnerKind::Logistic;
  return s;
}

std::vector<LearnerSpec> default_library(std::uint64_t seed) {
  return {LearnerSpec::knn(), LearnerSpec::svm(), LearnerSpec::random_forest(seed)};
}

std::vector<LearnerSpec> confidence_library(std::uint64_t seed) {
  auto lib = default_library(seed);
  lib.push_back(LearnerSpec::logistic());
  return lib;
}

double TrainedLearner::score(std::span<const double> x) const {
  if (x.size() != dimension_)
    throw Error(ErrorKind::DimensionMismatch, spec_.name() + ": expected " +
                                                  std::to_string(dimension_) + " features, got " +
                                                  std::to_string(x.size()));
  const double s = std::visit([&](const auto& m) { return m.score(x); }, model_);
  return std::clamp(s, 0.0, 1.0);
}

std::vector<double> TrainedLearner::score_all(const Matrix& features) const {
  if (features.rows() > 0 && features.cols() != dimension_)
    throw Error(ErrorKind::DimensionMismatch, spec_.name() + ": expected " +
                                                  std::to_string(dimension_) + " features, got " +
                                                  std::to_string(features.cols()));
  if (const auto* forest = std::get_if<ForestModel>(&model_)) return forest->score_all(features);
  std::vector<double> out(features.rows());
  for (std::size_t r = 0; r < features.rows(); ++r) out[r] = score(features.row(r));
  return out;
}

TrainedLearner train(const LearnerSpec& spec, const Dataset& d) {
  d.validate(true);
  const std::size_t p = d.dimension();
  switch (spec.kind) {
    case LearnerKind::Knn:
      return {spec, KnnModel::fit(d, spec.knn_k), p};
    case LearnerKind::Svm: {
      SvmOptions o;
      o.cost = spec.svm_cost;
      o.gamma = spec.svm_gamma;
      o.tolerance = spec.svm_tolerance;
      o.max_iterations = spec.svm_max_iterations;
      return {spec, SvmModel::fit(d, o), p};
    }
    case LearnerKind::RandomForest: {
      ForestOptions o;
      o.n_trees = spec.rf_n_trees;
      o.mtry = spec.rf_mtry;
      o.min_node = spec.rf_min_node;
      o.bootstrap = spec.rf_bootstrap;
      o.seed = spec.seed;
      return {spec, ForestModel::fit(d, o), p};
    }
    case LearnerKind::Logistic:
      return {spec, LogisticModel::fit(d), p};
  }
  throw Error(ErrorKind::Internal, "unhandled learner kind");
}

}  // namespace mnsl
