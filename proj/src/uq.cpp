#include "mnsl/uq.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mnsl/error.hpp"
#include "mnsl/metrics.hpp"
#include "mnsl/parallel.hpp"
#include "mnsl/rng.hpp"

namespace mnsl {
namespace {

constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kRegressionStream = 2;
constexpr std::uint64_t kSplitModelStream = 100;

double clamp_probability(double p) { return std::clamp(p, kLogLossClamp, 1.0 - kLogLossClamp); }

}  // namespace

void UQConfig::validate() const {
  if (n_splits < 2) throw Error(ErrorKind::InvalidArgument, "uq: need at least 2 splits");
  if (sl_folds < 2) throw Error(ErrorKind::InvalidArgument, "uq: need at least 2 SL folds");
}

double CorrectnessLabels::mean() const {
  if (w.empty()) return 0.0;
  return static_cast<double>(std::accumulate(w.begin(), w.end(), 0)) / static_cast<double>(w.size());
}

OobResult compute_oob_labels(const Dataset& d, std::span<const LearnerSpec> library,
                             const UQConfig& cfg, const SplitTrainingObserver& observer) {
  cfg.validate();
  d.validate(true);
  OobResult out;
  out.splits = assign_folds(d.labels, cfg.n_splits, derive_seed(cfg.seed, kSplitStream));
  out.labels.w.assign(d.size(), 0);
  out.oob_scores.assign(d.size(), 0.0);
  out.split_accuracy.assign(cfg.n_splits, 0.0);

  parallel_for(cfg.n_splits, [&](std::size_t b) {
    const auto train_rows = out.splits.rows_not_in(b);
    if (observer) observer(b, train_rows);
    SuperLearnerOptions o;
    o.folds = cfg.sl_folds;
    o.seed = derive_seed(cfg.seed, kSplitModelStream + b);
    o.mode = SlMode::Full;
    o.cutoff = 0.5;
    o.search = cfg.search;
    SuperLearnerModel sl;
    try {
      sl = fit_super_learner(d.subset(train_rows), library, o);
    } catch (const Error& e) {
      throw e.with_context("uq split " + std::to_string(b));
    }
    std::size_t correct = 0;
    const auto held_out = out.splits.rows_in(b);
    for (auto r : held_out) {
      const auto x = d.features.row(r);
      out.oob_scores[r] = sl.score(x);
      const int predicted = out.oob_scores[r] > sl.cutoff ? 1 : 0;
      out.labels.w[r] = predicted == d.labels[r] ? 1 : 0;
      correct += out.labels.w[r];
    }
    out.split_accuracy[b] = static_cast<double>(correct) / static_cast<double>(held_out.size());
  });
  return out;
}

UQModel UQModel::constant(double rate, std::size_t dimension) {
  UQModel m;
  m.rate_ = clamp_probability(rate);
  m.dimension_ = dimension;
  return m;
}

UQModel UQModel::from_super_learner(SuperLearnerModel sl) {
  UQModel m;
  m.sl_ = std::move(sl);
  return m;
}

double UQModel::estimate(std::span<const double> x) const {
  if (!sl_) {
    if (dimension_ != 0 && x.size() != dimension_)
      throw Error(ErrorKind::DimensionMismatch, "uq: feature dimension mismatch");
    return rate_;
  }
  return clamp_probability(sl_->score(x, SlMode::Full));
}

UQModel fit_uq(const Dataset& d, const CorrectnessLabels& w, const UQConfig& cfg) {
  cfg.validate();
  if (w.w.size() != d.size())
    throw Error(ErrorKind::InvalidArgument, "fit_uq: correctness labels do not match data");
  Dataset target{d.features, w.w};
  target.validate(false);

  const std::size_t ones = target.count_label(1);
  const std::size_t zeros = target.size() - ones;
  if (std::min(ones, zeros) < cfg.sl_folds) return UQModel::constant(w.mean(), d.dimension());

  SuperLearnerOptions o;
  o.folds = cfg.sl_folds;
  o.seed = derive_seed(cfg.seed, kRegressionStream);
  o.mode = SlMode::Full;
  o.loss = RiskLoss::LogLoss;
  o.search = cfg.search;
  const auto library = cfg.regression_library.empty() ? confidence_library(cfg.seed)
                                                      : cfg.regression_library;
  try {
    return UQModel::from_super_learner(fit_super_learner(target, library, o));
  } catch (const Error& e) {
    throw e.with_context("uq regression");
  }
}

double estimate_confidence(const UQModel& m, std::span<const double> x) { return m.estimate(x); }

double estimate_confidence(const UQModel& m, const SummaryVector& x) {
  const auto a = x.as_array();
  return m.estimate(a);
}

}  // namespace mnsl
