#include "mnsl/report.hpp"

#include <set>
#include <string>

#include "mnsl/error.hpp"

namespace mnsl {
namespace {

std::string mode_name(SlMode m) { return m == SlMode::Full ? "full" : "discrete"; }
std::string loss_name(RiskLoss l) { return l == RiskLoss::RankAuc ? "1-auc" : "log-loss"; }

void reject_unknown(const Json& j, const std::set<std::string>& known, const char* what) {
  for (const auto& [key, _] : j.items())
    if (!known.contains(key))
      throw Error(ErrorKind::Parse, std::string(what) + ": unknown key '" + key + "'");
}

template <class T>
void read_if(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Json to_json(const LearnerSpec& spec) {
  Json j;
  j["kind"] = spec.name();
  switch (spec.kind) {
    case LearnerKind::Knn:
      j["k"] = spec.knn_k;
      break;
    case LearnerKind::Svm:
      j["cost"] = spec.svm_cost;
      j["gamma"] = spec.svm_gamma;
      j["tolerance"] = spec.svm_tolerance;
      j["max_iterations"] = spec.svm_max_iterations;
      break;
    case LearnerKind::RandomForest:
      j["n_trees"] = spec.rf_n_trees;
      j["mtry"] = spec.rf_mtry;
      j["min_node"] = spec.rf_min_node;
      j["bootstrap"] = spec.rf_bootstrap;
      j["seed"] = spec.seed;
      break;
    case LearnerKind::Logistic:
      break;
  }
  return j;
}

LearnerSpec learner_spec_from_json(const Json& j) {
  try {
    reject_unknown(j, {"kind", "k", "cost", "gamma", "tolerance", "max_iterations", "n_trees",
                       "mtry", "min_node", "bootstrap", "seed"},
                   "learner");
    LearnerSpec s;
    s.kind = learner_kind_from_string(j.at("kind").get<std::string>());
    read_if(j, "k", s.knn_k);
    read_if(j, "cost", s.svm_cost);
    read_if(j, "gamma", s.svm_gamma);
    read_if(j, "tolerance", s.svm_tolerance);
    read_if(j, "max_iterations", s.svm_max_iterations);
    read_if(j, "n_trees", s.rf_n_trees);
    read_if(j, "mtry", s.rf_mtry);
    read_if(j, "min_node", s.rf_min_node);
    read_if(j, "bootstrap", s.rf_bootstrap);
    read_if(j, "seed", s.seed);
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("learner: ") + e.what());
  }
}

ScenarioConfig scenario_config_from_json(const Json& j, ScenarioConfig base) {
  try {
    reject_unknown(j, {"n_nodes", "p0", "p1", "p2_values", "edge_counts", "samples_per_model",
                       "sl_folds", "perf_folds", "uq_splits", "seed", "library"},
                   "config");
    read_if(j, "n_nodes", base.n_nodes);
    read_if(j, "p0", base.p0);
    read_if(j, "p1", base.p1);
    read_if(j, "p2_values", base.p2_values);
    read_if(j, "edge_counts", base.edge_counts);
    read_if(j, "samples_per_model", base.samples_per_model);
    read_if(j, "sl_folds", base.sl_folds);
    read_if(j, "perf_folds", base.perf_folds);
    read_if(j, "uq_splits", base.uq_splits);
    read_if(j, "seed", base.seed);
    if (j.contains("library")) {
      base.library.clear();
      for (const auto& item : j.at("library")) base.library.push_back(learner_spec_from_json(item));
    }
    return base;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
}

Json to_json(const ScenarioConfig& cfg) {
  Json j;
  j["n_nodes"] = cfg.n_nodes;
  j["p0"] = cfg.p0;
  j["p1"] = cfg.p1;
  j["p2_values"] = cfg.p2_values;
  j["edge_counts"] = cfg.edge_counts;
  j["samples_per_model"] = cfg.samples_per_model;
  j["sl_folds"] = cfg.sl_folds;
  j["perf_folds"] = cfg.perf_folds;
  j["uq_splits"] = cfg.uq_splits;
  j["seed"] = cfg.seed;
  j["library"] = Json::array();
  for (const auto& s : cfg.effective_library()) j["library"].push_back(to_json(s));
  return j;
}

Json model_report(const SuperLearnerModel& m) {
  Json j;
  j["mode"] = mode_name(m.mode);
  j["loss"] = loss_name(m.loss);
  j["n_folds"] = m.n_folds;
  j["fold_seed"] = m.fold_seed;
  j["cutoff"] = m.cutoff;
  j["learners"] = Json::array();
  for (const auto& l : m.learners) j["learners"].push_back(to_json(l.spec()));
  j["cv_risks"] = m.cv_risks;
  j["selected_index"] = m.selected_index;
  j["selected_learner"] = m.learners.empty() ? "" : m.learners[m.selected_index].spec().name();
  j["weights"] = m.weights.weights;
  j["weights_risk"] = m.weights_risk;
  j["n_samples"] = m.z.labels.size();
  return j;
}

Json uq_report(const OobResult& oob, const UQModel& model, std::optional<double> confidence) {
  Json j;
  j["B"] = oob.splits.n_folds;
  j["split_seed"] = oob.splits.seed;
  j["per_split_accuracy"] = oob.split_accuracy;
  j["mean_w"] = oob.labels.mean();
  j["regression"] = model.is_constant() ? Json{{"kind", "constant"}, {"rate", model.constant_rate()}}
                                        : model_report(*model.super_learner());
  j["confidence_at_observed"] = confidence ? Json(*confidence) : Json(nullptr);
  return j;
}

Json to_json(const ResultsTable& table) {
  Json j;
  j["cells"] = Json::array();
  for (const auto& c : table.cells) {
    Json cell;
    cell["edge_count"] = c.edge_count;
    cell["p2"] = c.p2;
    cell["seed"] = c.seed;
    cell["samples_per_model"] = c.samples_per_model;
    cell["ok"] = c.ok;
    if (!c.ok) {
      cell["error"] = c.error;
    } else {
      const auto& p = c.performance;
      Json auc;
      for (std::size_t m = 0; m < p.methods.size(); ++m) auc[p.methods[m]] = p.auc[m];
      cell["auc"] = auc;
      Json folds;
      for (std::size_t m = 0; m < p.methods.size(); ++m) folds[p.methods[m]] = p.fold_auc[m];
      cell["fold_auc"] = folds;
      cell["selected_per_fold"] = p.selected;
      Json weights = Json::array();
      for (const auto& w : p.weights) weights.push_back(w.weights);
      cell["weights_per_fold"] = weights;
    }
    j["cells"].push_back(cell);
  }
  return j;
}

Json to_json(const Selection& s) {
  Json j;
  j["model_index"] = s.model_index;
  j["score"] = s.score;
  j["confidence"] = s.confidence;
  j["summary"] = {{"triangles", s.summary.triangles},
                  {"avg_clustering", s.summary.avg_clustering},
                  {"deg_q25", s.summary.deg_q25},
                  {"deg_q50", s.summary.deg_q50},
                  {"deg_q75", s.summary.deg_q75}};
  j["warnings"] = s.warnings;
  return j;
}

}  // namespace mnsl
