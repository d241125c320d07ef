// Command-line front end: simulate training data, fit and evaluate the
// Super Learner, quantify confidence and classify observed networks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mnsl/error.hpp"
#include "mnsl/harness.hpp"
#include "mnsl/parallel.hpp"
#include "mnsl/report.hpp"
#include "mnsl/rng.hpp"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string scale = "desk";
  std::size_t threads = 0;
};

mnsl::ScenarioConfig load_config(const GlobalOptions& g) {
  auto cfg = mnsl::ScenarioConfig::for_scale(mnsl::scale_from_string(g.scale));
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw mnsl::Error(mnsl::ErrorKind::Io, "cannot open config " + g.config_path);
    mnsl::Json j;
    try {
      in >> j;
    } catch (const mnsl::Json::exception& e) {
      throw mnsl::Error(mnsl::ErrorKind::Parse, g.config_path + ": " + e.what());
    }
    cfg = mnsl::scenario_config_from_json(j, cfg);
  }
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

std::vector<mnsl::LearnerSpec> regression_library(std::vector<mnsl::LearnerSpec> library) {
  library.push_back(mnsl::LearnerSpec::logistic());
  return library;
}

// Writes to --out, or stdout when no path was given.
void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw mnsl::Error(mnsl::ErrorKind::Io, "cannot write " + g.out);
  out << text;
}

mnsl::Dataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mnsl::Error(mnsl::ErrorKind::Io, "cannot open " + path);
  try {
    return mnsl::dataset_from_summaries(mnsl::read_summary_csv(in));
  } catch (const mnsl::Error& e) {
    throw e.with_context(path);
  }
}

// Training data either from a CSV file or simulated for one grid cell.
mnsl::Dataset training_data(const mnsl::ScenarioConfig& cfg, const std::string& data_path,
                            std::size_t edge_count, std::optional<double> p2) {
  if (!data_path.empty()) return read_dataset(data_path);
  if (!p2)
    throw mnsl::Error(mnsl::ErrorKind::InvalidArgument, "need --data or --p2 to obtain training data");
  return mnsl::build_training_data(cfg, edge_count, *p2, mnsl::cell_seed(cfg.seed, edge_count, *p2));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model selection between mechanistic network models with a Super Learner"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Scenario configuration JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Output path (stdout when omitted)");
  app.add_option("--scale", g.scale, "Sample scale")->check(CLI::IsMember({"desk", "full"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  std::size_t edge_count = 0;
  double p2 = 0.0;
  std::optional<double> p2_opt;
  std::optional<std::size_t> samples;
  std::string data_path;
  std::string edges_path;
  std::string mode = "full";

  auto* generate = app.add_subcommand("generate", "Simulate one cell's training data as CSV");
  generate->add_option("--edge-count", edge_count, "Edge count of both models")->required();
  generate->add_option("--p2", p2, "Triadic closure plus increment of the full model")->required();
  generate->add_option("--samples", samples, "Networks per model (overrides scale/config)");

  auto* trainc = app.add_subcommand("train", "Fit the Super Learner on a dataset CSV");
  trainc->add_option("--data", data_path, "Dataset CSV")->required()->check(CLI::ExistingFile);
  trainc->add_option("--mode", mode, "Prediction mode")->check(CLI::IsMember({"full", "discrete"}));

  auto* evaluate = app.add_subcommand("evaluate", "Run the scenario grid with performance CV");

  auto* uq = app.add_subcommand("uq", "Estimate confidence in the selected model");
  uq->add_option("--data", data_path, "Dataset CSV")->check(CLI::ExistingFile);
  uq->add_option("--edge-count", edge_count, "Cell edge count when simulating");
  uq->add_option("--p2", p2_opt, "Cell p2 when simulating");
  uq->add_option("--edges", edges_path, "Observed network edge list")->check(CLI::ExistingFile);

  auto* select = app.add_subcommand("select", "Classify an observed network");
  select->add_option("--edges", edges_path, "Observed network edge list")
      ->required()
      ->check(CLI::ExistingFile);
  select->add_option("--data", data_path, "Dataset CSV")->check(CLI::ExistingFile);
  select->add_option("--p2", p2_opt, "Cell p2 when simulating (edge count taken from the network)");

  CLI11_PARSE(app, argc, argv);

  try {
    mnsl::set_thread_count(g.threads);
    auto cfg = load_config(g);

    if (*generate) {
      if (samples) cfg.samples_per_model = *samples;
      const auto rows = mnsl::simulate_summaries(cfg, edge_count, p2,
                                                 mnsl::cell_seed(cfg.seed, edge_count, p2),
                                                 cfg.samples_per_model);
      std::ostringstream s;
      mnsl::write_summary_csv(s, rows);
      emit(g, s.str());
    } else if (*trainc) {
      const auto d = read_dataset(data_path);
      mnsl::SuperLearnerOptions o;
      o.folds = cfg.sl_folds;
      o.seed = cfg.seed;
      o.mode = mode == "full" ? mnsl::SlMode::Full : mnsl::SlMode::Discrete;
      const auto library = cfg.effective_library();
      const auto model = mnsl::fit_super_learner(d, library, o);
      emit(g, mnsl::model_report(model).dump(2) + "\n");
    } else if (*evaluate) {
      const auto table = mnsl::run_grid(cfg);
      std::ostringstream csv;
      mnsl::write_results_csv(csv, table);
      emit(g, csv.str());
      if (!g.out.empty()) {
        auto json_path = std::filesystem::path(g.out).replace_extension(".json");
        std::ofstream js(json_path);
        if (!js) throw mnsl::Error(mnsl::ErrorKind::Io, "cannot write " + json_path.string());
        mnsl::Json j;
        j["config"] = mnsl::to_json(cfg);
        j["results"] = mnsl::to_json(table);
        js << j.dump(2) << "\n";
      }
      for (const auto& c : table.cells)
        if (!c.ok) std::cerr << "cell (" << c.edge_count << ", " << c.p2 << ") failed: " << c.error << "\n";
    } else if (*uq) {
      const auto d = training_data(cfg, data_path, edge_count, p2_opt);
      mnsl::UQConfig u;
      u.n_splits = cfg.uq_splits;
      u.sl_folds = cfg.sl_folds;
      u.seed = mnsl::derive_seed(cfg.seed, 3);
      const auto library = cfg.effective_library();
      u.regression_library = regression_library(library);
      const auto oob = mnsl::compute_oob_labels(d, library, u);
      const auto model = mnsl::fit_uq(d, oob.labels, u);
      std::optional<double> confidence;
      if (!edges_path.empty())
        confidence = mnsl::estimate_confidence(model, mnsl::summarize(mnsl::read_edge_list_file(edges_path)));
      emit(g, mnsl::uq_report(oob, model, confidence).dump(2) + "\n");
    } else if (*select) {
      const auto graph = mnsl::read_edge_list_file(edges_path);
      const auto d = training_data(cfg, data_path, graph.edge_count(), p2_opt);
      const auto library = cfg.effective_library();
      mnsl::SuperLearnerOptions o;
      o.folds = cfg.sl_folds;
      o.seed = cfg.seed;
      const auto sl = mnsl::fit_super_learner(d, library, o);
      mnsl::UQConfig u;
      u.n_splits = cfg.uq_splits;
      u.sl_folds = cfg.sl_folds;
      u.seed = mnsl::derive_seed(cfg.seed, 3);
      u.regression_library = regression_library(library);
      const auto oob = mnsl::compute_oob_labels(d, library, u);
      const auto uqm = mnsl::fit_uq(d, oob.labels, u);
      std::optional<mnsl::ModelParams> calibrated;
      if (data_path.empty()) calibrated = cfg.full_model(graph.edge_count(), *p2_opt);
      const auto s = mnsl::select_for_network(graph, sl, uqm, calibrated ? &*calibrated : nullptr);
      for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
      emit(g, mnsl::to_json(s).dump(2) + "\n");
    }
  } catch (const mnsl::Error& e) {
    std::cerr << "error [" << mnsl::to_string(e.kind()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
