#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mnsl/dataset.hpp"
#include "mnsl/ensemble.hpp"
#include "mnsl/graph.hpp"
#include "mnsl/learners.hpp"
#include "mnsl/netgen.hpp"
#include "mnsl/stats.hpp"
#include "mnsl/uq.hpp"

namespace mnsl {

enum class Scale { Desk, Full };

Scale scale_from_string(const std::string& name);

/// Scenario grid: the full model (p2 > 0) against the submodel with p2 = 0,
/// both sharing n, m, p0 and p1.
struct ScenarioConfig {
  std::size_t n_nodes = 100;
  double p0 = 0.3;
  double p1 = 0.1;
  std::vector<double> p2_values{0.005, 0.01, 0.03, 0.05};
  std::vector<std::size_t> edge_counts{500, 1000, 2000};
  std::size_t samples_per_model = 2000;
  std::size_t sl_folds = 5;
  std::size_t perf_folds = 10;
  std::size_t uq_splits = 10;
  std::uint64_t seed = 20190417;
  /// Empty selects default_library(seed).
  std::vector<LearnerSpec> library;

  /// 2,000 samples per model at desk scale, 10,000 at full scale.
  static ScenarioConfig for_scale(Scale scale);

  void validate() const;
  std::vector<LearnerSpec> effective_library() const;
  ModelParams full_model(std::size_t edge_count, double p2) const;
  ModelParams submodel(std::size_t edge_count) const;
};

/// Seed of one grid cell, a function of the master seed and the cell
/// coordinates only, so a cell reproduces when run alone.
std::uint64_t cell_seed(std::uint64_t master, std::size_t edge_count, double p2);

/// samples_per_model networks from each model, summarized. Row 2i is the
/// submodel's sample i (label 0), row 2i+1 the full model's (label 1).
std::vector<LabeledSummary> simulate_summaries(const ScenarioConfig& cfg, std::size_t edge_count,
                                               double p2, std::uint64_t seed,
                                               std::size_t per_model);
Dataset build_training_data(const ScenarioConfig& cfg, std::size_t edge_count, double p2,
                            std::uint64_t seed);

struct PerformanceResult {
  std::vector<std::string> methods;  // "fSL", "dSL", then the library names
  std::vector<double> auc;           // mean over outer folds, per method
  std::vector<std::vector<double>> fold_auc;  // [method][outer fold]
  std::vector<std::size_t> selected;          // discrete choice per outer fold
  std::vector<EnsembleWeights> weights;       // full-SL weights per outer fold
  /// min_l cv_risk − weights_risk per outer fold on the internal Z; never negative.
  std::vector<double> dominance_margin;

  double auc_of(const std::string& method) const;
  double best_candidate_auc() const;
};

/// Outer stratified perf_folds split; every outer fold gets its own V-fold SL
/// fitted on the other folds, which then scores the held-out fold. AUC is
/// computed per outer fold and averaged.
PerformanceResult performance_cv_auc(const Dataset& d, std::span<const LearnerSpec> library,
                                     std::size_t sl_folds, std::size_t perf_folds,
                                     std::uint64_t seed);

struct CellResult {
  std::size_t edge_count = 0;
  double p2 = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples_per_model = 0;
  bool ok = false;
  std::string error;
  PerformanceResult performance;
};

struct ResultsTable {
  std::vector<CellResult> cells;  // edge-count major, p2 minor

  const CellResult& cell(std::size_t edge_count, double p2) const;
};

/// Runs every (edge_count, p2) cell. A failing cell is recorded and the rest
/// still run.
ResultsTable run_grid(const ScenarioConfig& cfg);

/// "edge_count,p2,method,auc", one row per method of every successful cell.
void write_results_csv(std::ostream& out, const ResultsTable& table);

struct Selection {
  int model_index = 0;
  double score = 0.0;
  double confidence = 0.0;
  SummaryVector summary;
  std::vector<std::string> warnings;
};

/// Summarizes g and applies the SL and the confidence model. Inputs the
/// calibrated models could not have produced (wrong node or edge count, no
/// edges) only add warnings.
Selection select_for_network(const Graph& g, const SuperLearnerModel& sl, const UQModel& uq,
                             const ModelParams* calibrated = nullptr);
Selection select_for_network(const std::string& edge_list_path, const SuperLearnerModel& sl,
                             const UQModel& uq, const ModelParams* calibrated = nullptr);

struct UqScenarioResult {
  std::size_t edge_count = 0;
  double p2 = 0.0;
  OobResult oob;
  UQModel model;
  double mean_confidence_training = 0.0;
  double mean_confidence_test = 0.0;
  std::size_t test_per_model = 0;
};

/// Simulates one cell's training data, computes the correctness labels,
/// fits the confidence regression (the scenario library plus logistic
/// regression) and averages its output over fresh
/// networks (test_per_model from each model).
UqScenarioResult run_uq_scenario(const ScenarioConfig& cfg, std::size_t edge_count, double p2,
                                 std::size_t test_per_model);

}  // namespace mnsl
