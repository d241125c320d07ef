#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mnsl/dataset.hpp"
#include "mnsl/forest.hpp"
#include "mnsl/knn.hpp"
#include "mnsl/logistic.hpp"
#include "mnsl/svm.hpp"

namespace mnsl {

enum class LearnerKind { Knn, Svm, RandomForest, Logistic };

std::string to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& name);

/// Configuration of one library entry. Zero-valued rf_mtry / svm_gamma pick
/// the dimension-dependent defaults floor(sqrt(p)) and 1/p at fit time.
struct LearnerSpec {
  LearnerKind kind = LearnerKind::Knn;
  std::size_t knn_k = 10;
  std::size_t rf_n_trees = 500;
  std::size_t rf_mtry = 0;
  std::size_t rf_min_node = 1;
  bool rf_bootstrap = true;
  double svm_cost = 1.0;
  double svm_gamma = 0.0;
  double svm_tolerance = 1e-3;
  std::uint64_t svm_max_iterations = 1'000'000;
  std::uint64_t seed = 0;

  std::string name() const { return to_string(kind); }

  static LearnerSpec knn(std::size_t k = 10);
  static LearnerSpec svm();
  static LearnerSpec random_forest(std::uint64_t seed = 0);
  static LearnerSpec logistic();
};

/// KNN, SVM, RF in that order.
std::vector<LearnerSpec> default_library(std::uint64_t seed = 0);
/// default_library plus logistic regression.
std::vector<LearnerSpec> confidence_library(std::uint64_t seed = 0);

/// A fitted learner. Immutable; scoring is thread-safe.
class TrainedLearner {
 public:
  using Model = std::variant<KnnModel, SvmModel, ForestModel, LogisticModel>;

  TrainedLearner(LearnerSpec spec, Model model, std::size_t dimension)
      : spec_(std::move(spec)), model_(std::move(model)), dimension_(dimension) {}

  const LearnerSpec& spec() const noexcept { return spec_; }
  const Model& model() const noexcept { return model_; }
  std::size_t dimension() const noexcept { return dimension_; }

  /// Class-1 score in [0, 1].
  double score(std::span<const double> x) const;
  std::vector<double> score_all(const Matrix& features) const;

 private:
  LearnerSpec spec_;
  Model model_;
  std::size_t dimension_;
};

/// Fits one learner. Throws DegenerateData if a class is absent and
/// NonConvergence if the SVM solver exceeds its iteration cap.
TrainedLearner train(const LearnerSpec& spec, const Dataset& d);

}  // namespace mnsl
