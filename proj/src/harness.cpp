#include "mnsl/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "mnsl/error.hpp"
#include "mnsl/metrics.hpp"
#include "mnsl/parallel.hpp"
#include "mnsl/rng.hpp"

namespace mnsl {
namespace {

// Stream indices under a cell seed.
constexpr std::uint64_t kSubmodelStream = 0;
constexpr std::uint64_t kFullModelStream = 1;
constexpr std::uint64_t kOuterFoldStream = 2;
constexpr std::uint64_t kUqStream = 3;
constexpr std::uint64_t kTestStream = 4;
constexpr std::uint64_t kLibraryStream = 5;
constexpr std::uint64_t kInnerSlStream = 1000;

}  // namespace

Scale scale_from_string(const std::string& name) {
  if (name == "desk") return Scale::Desk;
  if (name == "full") return Scale::Full;
  throw Error(ErrorKind::InvalidArgument, "scale must be 'desk' or 'full', got '" + name + "'");
}

ScenarioConfig ScenarioConfig::for_scale(Scale scale) {
  ScenarioConfig cfg;
  cfg.samples_per_model = scale == Scale::Full ? 10000 : 2000;
  return cfg;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParams, what); };
  if (p2_values.empty() || edge_counts.empty()) fail("scenario grid is empty");
  if (sl_folds < 2 || perf_folds < 2) fail("fold counts must be at least 2");
  if (samples_per_model < 10 * perf_folds)
    fail("samples_per_model must be at least 10 x perf_folds");
  for (auto m : edge_counts)
    for (double p2 : p2_values) full_model(m, p2).validate();
}

std::vector<LearnerSpec> ScenarioConfig::effective_library() const {
  return library.empty() ? default_library(derive_seed(seed, kLibraryStream)) : library;
}

ModelParams ScenarioConfig::full_model(std::size_t edge_count, double p2) const {
  return {n_nodes, edge_count, p0, p1, p2};
}

ModelParams ScenarioConfig::submodel(std::size_t edge_count) const {
  return {n_nodes, edge_count, p0, p1, 0.0};
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t edge_count, double p2) {
  return derive_seed(derive_seed(master, edge_count), std::bit_cast<std::uint64_t>(p2));
}

std::vector<LabeledSummary> simulate_summaries(const ScenarioConfig& cfg, std::size_t edge_count,
                                               double p2, std::uint64_t seed,
                                               std::size_t per_model) {
  const ModelParams models[2] = {cfg.submodel(edge_count), cfg.full_model(edge_count, p2)};
  const std::uint64_t streams[2] = {derive_seed(seed, kSubmodelStream),
                                    derive_seed(seed, kFullModelStream)};
  std::vector<LabeledSummary> rows(2 * per_model);
  for (int label = 0; label < 2; ++label) models[label].validate();
  parallel_for(2 * per_model, [&](std::size_t r) {
    const int label = static_cast<int>(r % 2);
    const std::size_t i = r / 2;
    try {
      const auto g = generate(models[label], derive_seed(streams[label], i));
      rows[r] = {label, summarize(g)};
    } catch (const Error& e) {
      throw e.with_context("model " + std::to_string(label) + " sample " + std::to_string(i));
    }
  });
  return rows;
}

Dataset build_training_data(const ScenarioConfig& cfg, std::size_t edge_count, double p2,
                            std::uint64_t seed) {
  return dataset_from_summaries(
      simulate_summaries(cfg, edge_count, p2, seed, cfg.samples_per_model));
}

double PerformanceResult::auc_of(const std::string& method) const {
  const auto it = std::find(methods.begin(), methods.end(), method);
  if (it == methods.end()) throw Error(ErrorKind::InvalidArgument, "no method " + method);
  return auc[static_cast<std::size_t>(it - methods.begin())];
}

double PerformanceResult::best_candidate_auc() const {
  return *std::max_element(auc.begin() + 2, auc.end());
}

PerformanceResult performance_cv_auc(const Dataset& d, std::span<const LearnerSpec> library,
                                     std::size_t sl_folds, std::size_t perf_folds,
                                     std::uint64_t seed) {
  d.validate(true);
  const auto outer = assign_folds(d.labels, perf_folds, derive_seed(seed, kOuterFoldStream));
  const std::size_t n_methods = 2 + library.size();

  PerformanceResult out;
  out.methods = {"fSL", "dSL"};
  for (const auto& spec : library) out.methods.push_back(spec.name());
  out.fold_auc.assign(n_methods, std::vector<double>(perf_folds, 0.0));
  out.selected.assign(perf_folds, 0);
  out.weights.assign(perf_folds, {});
  out.dominance_margin.assign(perf_folds, 0.0);

  parallel_for(perf_folds, [&](std::size_t k) {
    SuperLearnerOptions o;
    o.folds = sl_folds;
    o.seed = derive_seed(seed, kInnerSlStream + k);
    SuperLearnerModel sl;
    try {
      sl = fit_super_learner(d.subset(outer.rows_not_in(k)), library, o);
    } catch (const Error& e) {
      throw e.with_context("outer fold " + std::to_string(k));
    }
    const auto held_out = outer.rows_in(k);
    std::vector<std::vector<double>> scores(n_methods, std::vector<double>(held_out.size()));
    std::vector<int> labels(held_out.size());
    const Matrix per_learner = sl.learner_scores(d.features.select_rows(held_out));
    for (std::size_t j = 0; j < held_out.size(); ++j) {
      double full = 0.0;
      for (std::size_t l = 0; l < library.size(); ++l) {
        full += sl.weights.weights[l] * per_learner(j, l);
        scores[2 + l][j] = per_learner(j, l);
      }
      scores[0][j] = std::clamp(full, 0.0, 1.0);
      scores[1][j] = per_learner(j, sl.selected_index);
      labels[j] = d.labels[held_out[j]];
    }
    for (std::size_t m = 0; m < n_methods; ++m) out.fold_auc[m][k] = auc(scores[m], labels);
    out.selected[k] = sl.selected_index;
    out.weights[k] = sl.weights;
    out.dominance_margin[k] =
        *std::min_element(sl.cv_risks.begin(), sl.cv_risks.end()) - sl.weights_risk;
  });

  out.auc.resize(n_methods);
  for (std::size_t m = 0; m < n_methods; ++m) {
    double s = 0.0;
    for (double a : out.fold_auc[m]) s += a;
    out.auc[m] = s / static_cast<double>(perf_folds);
  }
  return out;
}

const CellResult& ResultsTable::cell(std::size_t edge_count, double p2) const {
  for (const auto& c : cells)
    if (c.edge_count == edge_count && c.p2 == p2) return c;
  throw Error(ErrorKind::InvalidArgument, "no such grid cell");
}

ResultsTable run_grid(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto library = cfg.effective_library();
  ResultsTable table;
  for (auto m : cfg.edge_counts)
    for (double p2 : cfg.p2_values) {
      CellResult c;
      c.edge_count = m;
      c.p2 = p2;
      c.seed = cell_seed(cfg.seed, m, p2);
      c.samples_per_model = cfg.samples_per_model;
      table.cells.push_back(c);
    }
  parallel_for(table.cells.size(), [&](std::size_t i) {
    auto& c = table.cells[i];
    try {
      const auto d = build_training_data(cfg, c.edge_count, c.p2, c.seed);
      c.performance = performance_cv_auc(d, library, cfg.sl_folds, cfg.perf_folds, c.seed);
      c.ok = true;
    } catch (const std::exception& e) {
      c.ok = false;
      c.error = e.what();
    }
  });
  return table;
}

void write_results_csv(std::ostream& out, const ResultsTable& table) {
  out << "edge_count,p2,method,auc\n";
  for (const auto& c : table.cells) {
    if (!c.ok) continue;
    for (std::size_t m = 0; m < c.performance.methods.size(); ++m)
      out << c.edge_count << ',' << format_double(c.p2) << ',' << c.performance.methods[m] << ','
          << format_double(c.performance.auc[m]) << '\n';
  }
}

Selection select_for_network(const Graph& g, const SuperLearnerModel& sl, const UQModel& uq,
                             const ModelParams* calibrated) {
  Selection s;
  s.summary = summarize(g);
  if (g.edge_count() == 0)
    s.warnings.push_back("network has no edges; outside the support of the calibrated models");
  if (calibrated != nullptr) {
    if (g.node_count() != calibrated->n_nodes)
      s.warnings.push_back("node count " + std::to_string(g.node_count()) +
                           " differs from the calibrated " + std::to_string(calibrated->n_nodes));
    if (g.edge_count() != calibrated->n_edges)
      s.warnings.push_back("edge count " + std::to_string(g.edge_count()) +
                           " differs from the calibrated " + std::to_string(calibrated->n_edges));
  }
  const auto x = s.summary.as_array();
  s.score = sl.score(x);
  s.model_index = s.score > sl.cutoff ? 1 : 0;
  s.confidence = uq.estimate(x);
  return s;
}

Selection select_for_network(const std::string& edge_list_path, const SuperLearnerModel& sl,
                             const UQModel& uq, const ModelParams* calibrated) {
  return select_for_network(read_edge_list_file(edge_list_path), sl, uq, calibrated);
}

UqScenarioResult run_uq_scenario(const ScenarioConfig& cfg, std::size_t edge_count, double p2,
                                 std::size_t test_per_model) {
  cfg.validate();
  const auto seed = cell_seed(cfg.seed, edge_count, p2);
  const auto d = build_training_data(cfg, edge_count, p2, seed);

  UQConfig u;
  u.n_splits = cfg.uq_splits;
  u.sl_folds = cfg.sl_folds;
  u.seed = derive_seed(seed, kUqStream);
  const auto library = cfg.effective_library();
  u.regression_library = library;
  u.regression_library.push_back(LearnerSpec::logistic());

  UqScenarioResult r;
  r.edge_count = edge_count;
  r.p2 = p2;
  r.test_per_model = test_per_model;
  r.oob = compute_oob_labels(d, library, u);
  r.model = fit_uq(d, r.oob.labels, u);

  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) sum += r.model.estimate(d.features.row(i));
  r.mean_confidence_training = sum / static_cast<double>(d.size());

  if (test_per_model > 0) {
    const auto test = dataset_from_summaries(
        simulate_summaries(cfg, edge_count, p2, derive_seed(seed, kTestStream), test_per_model));
    sum = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) sum += r.model.estimate(test.features.row(i));
    r.mean_confidence_test = sum / static_cast<double>(test.size());
  }
  return r;
}

}  // namespace mnsl
