#include "mnsl/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "mnsl/error.hpp"
#include "mnsl/metrics.hpp"
#include "mnsl/parallel.hpp"
#include "mnsl/rng.hpp"

namespace mnsl {

std::vector<std::size_t> FoldAssignment::rows_in(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldAssignment::rows_not_in(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] != fold) out.push_back(i);
  return out;
}

FoldAssignment assign_folds(std::span<const int> labels, std::size_t n_folds, std::uint64_t seed) {
  if (n_folds < 2) throw Error(ErrorKind::InvalidArgument, "assign_folds: need at least 2 folds");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      throw Error(ErrorKind::InvalidArgument, "assign_folds: labels must be 0 or 1");
    by_class[labels[i]].push_back(i);
  }
  for (int c = 0; c < 2; ++c)
    if (by_class[c].size() < n_folds)
      throw Error(ErrorKind::TooFewSamples,
                  "assign_folds: class " + std::to_string(c) + " has " +
                      std::to_string(by_class[c].size()) + " samples, fewer than " +
                      std::to_string(n_folds) + " folds");

  FoldAssignment out;
  out.n_folds = n_folds;
  out.seed = seed;
  out.fold_of.assign(labels.size(), 0);
  Rng rng(seed);
  std::size_t dealt = 0;
  for (auto& rows : by_class) {
    rng.shuffle(rows.begin(), rows.end());
    for (auto r : rows) out.fold_of[r] = dealt++ % n_folds;
  }
  return out;
}

std::vector<double> CrossValidatedPredictions::column(std::size_t learner) const {
  std::vector<double> out(scores.rows());
  for (std::size_t r = 0; r < scores.rows(); ++r) out[r] = scores(r, learner);
  return out;
}

CrossValidatedPredictions cv_predictions(const Dataset& d, std::span<const LearnerSpec> library,
                                         const FoldAssignment& folds) {
  d.validate(true);
  if (library.empty()) throw Error(ErrorKind::InvalidArgument, "cv_predictions: empty library");
  if (folds.fold_of.size() != d.size())
    throw Error(ErrorKind::InvalidArgument, "cv_predictions: fold assignment does not match data");

  CrossValidatedPredictions z;
  z.scores = Matrix(d.size(), library.size());
  z.labels = d.labels;
  z.folds = folds;

  const std::size_t cells = folds.n_folds * library.size();
  parallel_for(cells, [&](std::size_t cell) {
    const std::size_t v = cell / library.size();
    const std::size_t l = cell % library.size();
    try {
      const auto train_rows = folds.rows_not_in(v);
      const auto model = train(library[l], d.subset(train_rows));
      const auto held_out = folds.rows_in(v);
      const auto scores = model.score_all(d.features.select_rows(held_out));
      for (std::size_t j = 0; j < held_out.size(); ++j) z.scores(held_out[j], l) = scores[j];
    } catch (const Error& e) {
      throw e.with_context("fold " + std::to_string(v) + ", learner " + library[l].name());
    }
  });
  return z;
}

double fold_averaged_risk(std::span<const double> scores, std::span<const int> labels,
                          const FoldAssignment& folds, RiskLoss loss) {
  if (scores.size() != labels.size() || folds.fold_of.size() != labels.size())
    throw Error(ErrorKind::DimensionMismatch, "risk: scores, labels and folds differ in length");
  std::vector<std::vector<double>> fold_scores(folds.n_folds);
  std::vector<std::vector<int>> fold_labels(folds.n_folds);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    fold_scores[folds.fold_of[i]].push_back(scores[i]);
    fold_labels[folds.fold_of[i]].push_back(labels[i]);
  }
  double total = 0.0;
  for (std::size_t v = 0; v < folds.n_folds; ++v) {
    if (loss == RiskLoss::RankAuc) {
      const auto pos = std::count(fold_labels[v].begin(), fold_labels[v].end(), 1);
      if (pos == 0 || pos == static_cast<std::ptrdiff_t>(fold_labels[v].size()))
        throw Error(ErrorKind::SingleClassFold,
                    "risk: fold " + std::to_string(v) + " lacks one of the classes");
      total += 1.0 - auc(fold_scores[v], fold_labels[v]);
    } else {
      total += log_loss(fold_scores[v], fold_labels[v]);
    }
  }
  return total / static_cast<double>(folds.n_folds);
}

double cv_risk(const CrossValidatedPredictions& z, std::size_t learner, RiskLoss loss) {
  if (learner >= z.learner_count())
    throw Error(ErrorKind::InvalidArgument, "cv_risk: learner index out of range");
  return fold_averaged_risk(z.column(learner), z.labels, z.folds, loss);
}

std::vector<double> cv_risks(const CrossValidatedPredictions& z, RiskLoss loss) {
  std::vector<double> out(z.learner_count());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = cv_risk(z, l, loss);
  return out;
}

std::size_t argmin_risk(std::span<const double> risks) {
  if (risks.empty()) throw Error(ErrorKind::InvalidArgument, "argmin_risk: no risks");
  std::size_t best = 0;
  for (std::size_t l = 1; l < risks.size(); ++l)
    if (risks[l] < risks[best]) best = l;
  return best;
}

std::size_t select_discrete(const CrossValidatedPredictions& z, RiskLoss loss) {
  return argmin_risk(cv_risks(z, loss));
}

EnsembleWeights EnsembleWeights::vertex(std::size_t learners, std::size_t index) {
  EnsembleWeights w;
  w.weights.assign(learners, 0.0);
  w.weights.at(index) = 1.0;
  return w;
}

std::vector<double> combine(const CrossValidatedPredictions& z, const EnsembleWeights& w) {
  if (w.weights.size() != z.learner_count())
    throw Error(ErrorKind::DimensionMismatch, "combine: weight count differs from learner count");
  std::vector<double> out(z.scores.rows(), 0.0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    double s = 0.0;
    for (std::size_t l = 0; l < w.weights.size(); ++l) s += w.weights[l] * z.scores(r, l);
    out[r] = s;
  }
  return out;
}

double weights_risk(const CrossValidatedPredictions& z, const EnsembleWeights& w, RiskLoss loss) {
  return fold_averaged_risk(combine(z, w), z.labels, z.folds, loss);
}

namespace {

EnsembleWeights softmax_weights(std::span<const double> logits) {
  // logits has L−1 entries; the last learner's logit is 0.
  const std::size_t learners = logits.size() + 1;
  double top = 0.0;
  for (double v : logits) top = std::max(top, v);
  EnsembleWeights w;
  w.weights.resize(learners);
  double sum = 0.0;
  for (std::size_t l = 0; l < learners; ++l) {
    const double e = std::exp((l + 1 < learners ? logits[l] : 0.0) - top);
    w.weights[l] = e;
    sum += e;
  }
  for (auto& v : w.weights) v /= sum;
  return w;
}

}  // namespace

EnsembleWeights optimize_weights(const CrossValidatedPredictions& z, RiskLoss loss,
                                 const NelderMeadOptions& options) {
  const std::size_t learners = z.learner_count();
  if (learners == 0) throw Error(ErrorKind::InvalidArgument, "optimize_weights: no learners");
  if (learners == 1) {
    (void)weights_risk(z, EnsembleWeights::vertex(1, 0), loss);  // surfaces fold errors
    return EnsembleWeights::vertex(1, 0);
  }

  EnsembleWeights best = EnsembleWeights::vertex(learners, 0);
  double best_risk = weights_risk(z, best, loss);
  for (std::size_t l = 1; l < learners; ++l) {
    auto w = EnsembleWeights::vertex(learners, l);
    const double r = weights_risk(z, w, loss);
    if (r < best_risk) {
      best_risk = r;
      best = std::move(w);
    }
  }

  auto objective = [&](std::span<const double> logits) {
    return weights_risk(z, softmax_weights(logits), loss);
  };
  // Start points: softmax put 0.9 on one vertex, or the barycenter.
  const double lean = std::log(0.9 * static_cast<double>(learners - 1) / 0.1);
  std::vector<std::vector<double>> starts;
  for (std::size_t l = 0; l < learners; ++l) {
    std::vector<double> s(learners - 1, 0.0);
    if (l + 1 < learners)
      s[l] = lean;
    else
      std::fill(s.begin(), s.end(), -lean);
    starts.push_back(std::move(s));
  }
  starts.emplace_back(learners - 1, 0.0);

  for (auto& start : starts) {
    const auto result = nelder_mead(objective, std::move(start), options);
    auto w = softmax_weights(result.x);
    const double r = weights_risk(z, w, loss);
    if (r < best_risk) {
      best_risk = r;
      best = std::move(w);
    }
  }
  return best;
}

std::size_t SuperLearnerModel::dimension() const {
  return learners.empty() ? 0 : learners.front().dimension();
}

Matrix SuperLearnerModel::learner_scores(const Matrix& features) const {
  Matrix out(features.rows(), learners.size());
  for (std::size_t l = 0; l < learners.size(); ++l) {
    const auto s = learners[l].score_all(features);
    for (std::size_t r = 0; r < s.size(); ++r) out(r, l) = s[r];
  }
  return out;
}

std::vector<double> SuperLearnerModel::learner_scores(std::span<const double> x) const {
  std::vector<double> out(learners.size());
  for (std::size_t l = 0; l < learners.size(); ++l) out[l] = learners[l].score(x);
  return out;
}

double SuperLearnerModel::score(std::span<const double> x, SlMode as) const {
  if (as == SlMode::Discrete) return learners.at(selected_index).score(x);
  double s = 0.0;
  for (std::size_t l = 0; l < learners.size(); ++l)
    if (weights.weights[l] != 0.0) s += weights.weights[l] * learners[l].score(x);
  return std::clamp(s, 0.0, 1.0);
}

int SuperLearnerModel::classify(std::span<const double> x) const {
  return score(x) > cutoff ? 1 : 0;
}

SuperLearnerModel fit_super_learner(const Dataset& d, std::span<const LearnerSpec> library,
                                    const SuperLearnerOptions& options) {
  d.validate(true);
  if (library.empty()) throw Error(ErrorKind::InvalidArgument, "super learner: empty library");
  if (!(options.cutoff > 0.0 && options.cutoff < 1.0))
    throw Error(ErrorKind::InvalidArgument, "super learner: cutoff must lie in (0,1)");

  SuperLearnerModel m;
  m.mode = options.mode;
  m.loss = options.loss;
  m.cutoff = options.cutoff;
  m.n_folds = options.folds;
  m.fold_seed = options.seed;

  const auto folds = assign_folds(d.labels, options.folds, options.seed);
  m.z = cv_predictions(d, library, folds);
  m.cv_risks = cv_risks(m.z, options.loss);
  m.selected_index = argmin_risk(m.cv_risks);
  m.weights = optimize_weights(m.z, options.loss, options.search);
  m.weights_risk = weights_risk(m.z, m.weights, options.loss);
  const double best_single = *std::min_element(m.cv_risks.begin(), m.cv_risks.end());
  if (!(m.weights_risk <= best_single))
    throw Error(ErrorKind::Internal, "super learner: optimized weights are dominated by a vertex");

  std::vector<std::optional<TrainedLearner>> refit(library.size());
  parallel_for(library.size(), [&](std::size_t l) {
    try {
      refit[l] = train(library[l], d);
    } catch (const Error& e) {
      throw e.with_context("refit, learner " + library[l].name());
    }
  });
  for (auto& r : refit) m.learners.push_back(std::move(*r));
  return m;
}

}  // namespace mnsl
