#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "mnsl/netgen.hpp"
#include "mnsl/report.hpp"
#include "mnsl/stats.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mnsl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(path("config.json")) << R"({
      "samples_per_model": 40, "sl_folds": 2, "perf_folds": 2, "uq_splits": 2,
      "edge_counts": [500], "p2_values": [0.05],
      "library": [{"kind": "KNN", "k": 5}, {"kind": "SVM"}, {"kind": "RF", "n_trees": 20}]
    })";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit status of the CLI; stdout goes to out.txt, stderr to err.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string(MNSL_CLI_PATH) + " " + args + " > " + path("out.txt") +
                            " 2> " + path("err.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateWritesSummaryCsv) {
  ASSERT_EQ(run("generate --edge-count 500 --p2 0.05 --samples 3 --config " + path("config.json")), 0)
      << read("err.txt");
  std::istringstream in(read("out.txt"));
  const auto rows = mnsl::read_summary_csv(in);
  ASSERT_EQ(rows.size(), 6U);
  EXPECT_EQ(rows[0].model_index, 0);
  EXPECT_EQ(rows[1].model_index, 1);
}

TEST_F(Cli, TrainReportsRisksAndWeights) {
  ASSERT_EQ(run("generate --edge-count 500 --p2 0.05 --config " + path("config.json") + " --out " +
                path("data.csv")),
            0);
  ASSERT_EQ(run("train --data " + path("data.csv") + " --config " + path("config.json")), 0)
      << read("err.txt");
  const auto j = mnsl::Json::parse(read("out.txt"));
  EXPECT_EQ(j.at("cv_risks").size(), 3U);
  EXPECT_EQ(j.at("weights").size(), 3U);
  EXPECT_TRUE(j.contains("selected_index"));
}

TEST_F(Cli, EvaluateIsByteReproducible) {
  const std::string base = "evaluate --config " + path("config.json") + " --seed 5 --out ";
  ASSERT_EQ(run(base + path("a.csv")), 0) << read("err.txt");
  ASSERT_EQ(run(base + path("b.csv")), 0) << read("err.txt");
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(read("a.csv").rfind("edge_count,p2,method,auc\n", 0), 0U);
  EXPECT_TRUE(fs::exists(path("a.json")));
  ASSERT_EQ(run(base + path("c.csv") + " --threads 2"), 0);
  EXPECT_EQ(read("a.csv"), read("c.csv"));
}

TEST_F(Cli, SelectClassifiesAnEdgeList) {
  mnsl::ModelParams p;
  p.n_edges = 500;
  p.p2 = 0.05;
  mnsl::write_edge_list_file(path("g.txt"), mnsl::generate(p, 3));
  ASSERT_EQ(run("select --edges " + path("g.txt") + " --p2 0.05 --config " + path("config.json")), 0)
      << read("err.txt");
  const auto j = mnsl::Json::parse(read("out.txt"));
  const int m = j.at("model_index").get<int>();
  EXPECT_TRUE(m == 0 || m == 1);
  const double c = j.at("confidence").get<double>();
  EXPECT_GT(c, 0.0);
  EXPECT_LT(c, 1.0);
}

TEST_F(Cli, UqReportsCorrectnessRate) {
  ASSERT_EQ(run("uq --edge-count 500 --p2 0.05 --config " + path("config.json")), 0) << read("err.txt");
  const auto j = mnsl::Json::parse(read("out.txt"));
  EXPECT_TRUE(j.contains("mean_w"));
}

TEST_F(Cli, ErrorsExitNonZeroWithKind) {
  std::ofstream(path("bad.txt")) << "3 1\n0 0\n";
  EXPECT_EQ(run("select --edges " + path("bad.txt") + " --p2 0.05 --config " + path("config.json")), 1);
  EXPECT_NE(read("err.txt").find("Parse"), std::string::npos) << read("err.txt");
  std::ofstream(path("unknown.json")) << R"({"sample_count": 3})";
  EXPECT_EQ(run("evaluate --config " + path("unknown.json")), 1);
  EXPECT_NE(run("generate --p2 0.05"), 0);  // missing required option
}
