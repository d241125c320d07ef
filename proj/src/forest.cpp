#include "mnsl/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mnsl/error.hpp"
#include "mnsl/parallel.hpp"
#include "mnsl/rng.hpp"

namespace mnsl {

int DecisionTree::predict(std::span<const double> x) const {
  std::uint32_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes_[i].leaf_class;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature < 0; }));
}

namespace {

struct Split {
  bool found = false;
  std::size_t feature = 0;
  std::size_t left_size = 0;  // entries of the sorted range that go left
  double threshold = 0.0;
};

// Grows one tree. `sorted[f]` lists the in-bag rows ordered by feature f;
// every node owns the same [begin, end) slice in all p lists.
class TreeGrower {
 public:
  TreeGrower(const Matrix& x, const std::vector<int>& y, const std::vector<std::uint32_t>& weight,
             std::vector<std::vector<std::uint32_t>> sorted, std::size_t mtry, std::size_t min_node,
             Rng& rng)
      : x_(x), y_(y), weight_(weight), sorted_(std::move(sorted)), mtry_(mtry),
        min_node_(min_node), rng_(rng), goes_left_(x.rows(), 0),
        scratch_(sorted_.empty() ? 0 : sorted_[0].size()), features_(x.cols()) {}

  DecisionTree grow() {
    struct Pending {
      std::size_t begin, end;
      std::uint32_t node;
    };
    std::vector<DecisionTree::Node> nodes(1);
    std::vector<Pending> stack{{0, sorted_[0].size(), 0}};
    while (!stack.empty()) {
      const auto [begin, end, id] = stack.back();
      stack.pop_back();

      double w0 = 0.0, w1 = 0.0;
      for (std::size_t k = begin; k < end; ++k) {
        const auto r = sorted_[0][k];
        (y_[r] == 1 ? w1 : w0) += weight_[r];
      }
      const Split split =
          (w0 == 0.0 || w1 == 0.0 || w0 + w1 <= static_cast<double>(min_node_))
              ? Split{}
              : best_split(begin, end, w0, w1);
      if (!split.found) {
        nodes[id].feature = -1;
        nodes[id].leaf_class = w1 > w0 ? 1 : (w0 > w1 ? 0 : static_cast<int>(rng_.below(2)));
        continue;
      }

      partition(begin, end, split);
      const auto left = static_cast<std::uint32_t>(nodes.size());
      nodes.resize(nodes.size() + 2);
      nodes[id].feature = static_cast<std::int32_t>(split.feature);
      nodes[id].threshold = split.threshold;
      nodes[id].left = left;
      nodes[id].right = left + 1;
      const std::size_t mid = begin + split.left_size;
      stack.push_back({mid, end, left + 1});
      stack.push_back({begin, mid, left});
    }
    return DecisionTree(std::move(nodes));
  }

 private:
  Split best_split(std::size_t begin, std::size_t end, double w0, double w1) {
    // Partial Fisher-Yates draw of mtry distinct features, then ascending
    // order so equal gains resolve to the lowest feature index.
    std::iota(features_.begin(), features_.end(), std::size_t{0});
    for (std::size_t i = 0; i < mtry_; ++i) {
      const auto j = i + static_cast<std::size_t>(rng_.below(features_.size() - i));
      std::swap(features_[i], features_[j]);
    }
    std::sort(features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(mtry_));

    const double total = w0 + w1;
    const double parent = (w0 * w0 + w1 * w1) / total;
    double best = parent * (1.0 + 1e-12);
    Split out;
    for (std::size_t fi = 0; fi < mtry_; ++fi) {
      const std::size_t f = features_[fi];
      const auto& order = sorted_[f];
      double l0 = 0.0, l1 = 0.0;
      for (std::size_t k = begin; k + 1 < end; ++k) {
        const auto r = order[k];
        (y_[r] == 1 ? l1 : l0) += weight_[r];
        const double v = x_(r, f);
        const double next = x_(order[k + 1], f);
        if (!(v < next)) continue;
        const double nl = l0 + l1;
        const double r0 = w0 - l0, r1 = w1 - l1;
        const double crit = (l0 * l0 + l1 * l1) / nl + (r0 * r0 + r1 * r1) / (total - nl);
        if (crit > best) {
          best = crit;
          double threshold = 0.5 * (v + next);
          if (!(threshold < next)) threshold = v;
          out = {true, f, k + 1 - begin, threshold};
        }
      }
    }
    return out;
  }

  void partition(std::size_t begin, std::size_t end, const Split& split) {
    const auto& chosen = sorted_[split.feature];
    for (std::size_t k = begin; k < end; ++k) goes_left_[chosen[k]] = k < begin + split.left_size;
    for (auto& order : sorted_) {
      std::size_t l = begin, r = 0;
      for (std::size_t k = begin; k < end; ++k) {
        const auto row = order[k];
        if (goes_left_[row])
          order[l++] = row;
        else
          scratch_[r++] = row;
      }
      std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(r),
                order.begin() + static_cast<std::ptrdiff_t>(l));
    }
  }

  const Matrix& x_;
  const std::vector<int>& y_;
  const std::vector<std::uint32_t>& weight_;
  std::vector<std::vector<std::uint32_t>> sorted_;
  std::size_t mtry_;
  std::size_t min_node_;
  Rng& rng_;
  std::vector<char> goes_left_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::size_t> features_;
};

}  // namespace

ForestModel ForestModel::fit(const Dataset& d, const ForestOptions& options) {
  d.validate(true);
  const std::size_t n = d.size();
  const std::size_t p = d.dimension();
  if (p == 0) throw Error(ErrorKind::InvalidArgument, "forest: no features");
  if (options.n_trees == 0) throw Error(ErrorKind::InvalidArgument, "forest: n_trees must be positive");
  if (options.min_node == 0) throw Error(ErrorKind::InvalidArgument, "forest: min_node must be positive");
  const std::size_t mtry =
      options.mtry != 0 ? options.mtry
                        : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(p))));
  if (mtry > p)
    throw Error(ErrorKind::InvalidArgument,
                "forest: mtry " + std::to_string(mtry) + " exceeds dimension " + std::to_string(p));

  std::vector<std::vector<std::uint32_t>> presorted(p, std::vector<std::uint32_t>(n));
  for (std::size_t f = 0; f < p; ++f) {
    auto& order = presorted[f];
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return d.features(a, f) < d.features(b, f);
    });
  }

  ForestModel model;
  model.dimension_ = p;
  model.trees_.resize(options.n_trees);
  parallel_for(options.n_trees, [&](std::size_t t) {
    Rng rng(derive_seed(options.seed, t));
    std::vector<std::uint32_t> weight(n, options.bootstrap ? 0 : 1);
    if (options.bootstrap)
      for (std::size_t i = 0; i < n; ++i) ++weight[rng.below(n)];

    std::vector<std::vector<std::uint32_t>> sorted(p);
    for (std::size_t f = 0; f < p; ++f) {
      sorted[f].reserve(n);
      for (auto r : presorted[f])
        if (weight[r] > 0) sorted[f].push_back(r);
    }
    TreeGrower grower(d.features, d.labels, weight, std::move(sorted), mtry, options.min_node, rng);
    model.trees_[t] = grower.grow();
  });
  return model;
}

double ForestModel::score(std::span<const double> x) const {
  if (x.size() != dimension_)
    throw Error(ErrorKind::DimensionMismatch, "forest: feature dimension mismatch");
  std::size_t votes = 0;
  for (const auto& tree : trees_) votes += tree.predict(x) == 1;
  return static_cast<double>(votes) / static_cast<double>(trees_.size());
}

}  // namespace mnsl

namespace mnsl {

std::vector<double> ForestModel::score_all(const Matrix& features) const {
  if (features.cols() != dimension_)
    throw Error(ErrorKind::DimensionMismatch, "forest: feature dimension mismatch");
  std::vector<std::size_t> votes(features.rows(), 0);
  for (const auto& tree : trees_)
    for (std::size_t r = 0; r < features.rows(); ++r) votes[r] += tree.predict(features.row(r)) == 1;
  std::vector<double> out(features.rows());
  for (std::size_t r = 0; r < out.size(); ++r)
    out[r] = static_cast<double>(votes[r]) / static_cast<double>(trees_.size());
  return out;
}

}  // namespace mnsl
