#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mnsl/dataset.hpp"

namespace mnsl {

struct ForestOptions {
  std::size_t n_trees = 500;
  std::size_t mtry = 0;  // 0 selects floor(sqrt(p))
  std::size_t min_node = 1;
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

/// Classification tree over raw features. Internal nodes send x to the left
/// child when x[feature] <= threshold.
class DecisionTree {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    int leaf_class = 0;

    friend bool operator==(const Node&, const Node&) = default;
  };

  DecisionTree() = default;
  explicit DecisionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  int predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_count() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<Node> nodes_;
};

/// Random forest: each tree is grown on a bootstrap resample with Gini splits
/// over mtry features drawn per node, until nodes are pure, hold at most
/// min_node samples, or admit no improving split. Split candidates are the
/// midpoints of consecutive distinct values; equal Gini gains keep the lowest
/// (feature, threshold). Tree t draws from derive_seed(seed, t).
class ForestModel {
 public:
  static ForestModel fit(const Dataset& d, const ForestOptions& options);

  /// Fraction of trees voting class 1.
  double score(std::span<const double> x) const;
  /// score() for every row, traversing tree by tree.
  std::vector<double> score_all(const Matrix& features) const;

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<DecisionTree>& trees() const noexcept { return trees_; }

  friend bool operator==(const ForestModel&, const ForestModel&) = default;

 private:
  std::vector<DecisionTree> trees_;
  std::size_t dimension_ = 0;
};

}  // namespace mnsl
