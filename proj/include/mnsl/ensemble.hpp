#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mnsl/dataset.hpp"
#include "mnsl/learners.hpp"
#include "mnsl/nelder_mead.hpp"

namespace mnsl {

/// Stratified V-fold partition of sample rows.
struct FoldAssignment {
  std::size_t n_folds = 0;
  std::vector<std::size_t> fold_of;
  std::uint64_t seed = 0;

  std::vector<std::size_t> rows_in(std::size_t fold) const;
  std::vector<std::size_t> rows_not_in(std::size_t fold) const;

  friend bool operator==(const FoldAssignment&, const FoldAssignment&) = default;
};

/// Each class is shuffled independently and dealt round-robin; the second
/// class continues the deal where the first stopped, so both per-class and
/// total fold sizes differ by at most one. Throws TooFewSamples if a class
/// has fewer than V rows.
FoldAssignment assign_folds(std::span<const int> labels, std::size_t n_folds, std::uint64_t seed);

/// The Z matrix: column l holds learner l's out-of-fold scores.
struct CrossValidatedPredictions {
  Matrix scores;
  std::vector<int> labels;
  FoldAssignment folds;

  std::size_t learner_count() const noexcept { return scores.cols(); }
  std::vector<double> column(std::size_t learner) const;
};

/// Trains every learner on each fold's complement and scores the fold.
/// The (fold × learner) grid runs on the parallel_for pool.
CrossValidatedPredictions cv_predictions(const Dataset& d, std::span<const LearnerSpec> library,
                                         const FoldAssignment& folds);

enum class RiskLoss {
  RankAuc,  // 1 − AUC
  LogLoss,  // mean negative binomial log-likelihood, clamped
};

/// Mean over folds of the per-fold loss of `scores` (one per row of z).
/// Throws SingleClassFold for the rank loss when a fold lacks a class.
double fold_averaged_risk(std::span<const double> scores, std::span<const int> labels,
                          const FoldAssignment& folds, RiskLoss loss);

double cv_risk(const CrossValidatedPredictions& z, std::size_t learner,
               RiskLoss loss = RiskLoss::RankAuc);
std::vector<double> cv_risks(const CrossValidatedPredictions& z, RiskLoss loss = RiskLoss::RankAuc);

/// Index of the smallest risk, lowest index on ties.
std::size_t argmin_risk(std::span<const double> risks);
std::size_t select_discrete(const CrossValidatedPredictions& z, RiskLoss loss = RiskLoss::RankAuc);

/// Convex weights over the library, summing to one.
struct EnsembleWeights {
  std::vector<double> weights;

  static EnsembleWeights vertex(std::size_t learners, std::size_t index);
  friend bool operator==(const EnsembleWeights&, const EnsembleWeights&) = default;
};

std::vector<double> combine(const CrossValidatedPredictions& z, const EnsembleWeights& w);
double weights_risk(const CrossValidatedPredictions& z, const EnsembleWeights& w,
                    RiskLoss loss = RiskLoss::RankAuc);

/// Minimizes the fold-averaged risk of Σ a_l·ŷ_l over the simplex by
/// Nelder–Mead on softmax logits (last logit pinned at 0), started from
/// each vertex and the barycenter. The pure vertices are candidates too, so
/// the result never has higher risk than the best single learner.
EnsembleWeights optimize_weights(const CrossValidatedPredictions& z,
                                 RiskLoss loss = RiskLoss::RankAuc,
                                 const NelderMeadOptions& options = {});

enum class SlMode { Discrete, Full };

struct SuperLearnerOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  SlMode mode = SlMode::Full;
  RiskLoss loss = RiskLoss::RankAuc;
  double cutoff = 0.5;
  NelderMeadOptions search;
};

/// A fitted Super Learner. Both the discrete choice and the convex weights
/// are kept; `mode` picks which one score() uses.
struct SuperLearnerModel {
  SlMode mode = SlMode::Full;
  RiskLoss loss = RiskLoss::RankAuc;
  std::size_t selected_index = 0;
  EnsembleWeights weights;
  double weights_risk = 0.0;
  std::vector<double> cv_risks;
  std::vector<TrainedLearner> learners;  // refit on all training rows
  double cutoff = 0.5;
  std::size_t n_folds = 0;
  std::uint64_t fold_seed = 0;
  CrossValidatedPredictions z;

  std::size_t dimension() const;
  std::vector<double> learner_scores(std::span<const double> x) const;
  /// Row r, column l: refit learner l's score of row r.
  Matrix learner_scores(const Matrix& features) const;
  double score(std::span<const double> x, SlMode as) const;
  double score(std::span<const double> x) const { return score(x, mode); }
  /// 1 iff score > cutoff.
  int classify(std::span<const double> x) const;
};

/// assign_folds → cv_predictions → select_discrete and optimize_weights →
/// refit of every learner on the whole data. Throws Internal if the
/// optimized weights' risk on Z exceeds any single learner's.
SuperLearnerModel fit_super_learner(const Dataset& d, std::span<const LearnerSpec> library,
                                    const SuperLearnerOptions& options);

}  // namespace mnsl
