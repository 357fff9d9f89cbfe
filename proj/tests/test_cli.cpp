#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "motifae/generators.hpp"
#include "motifae/graph.hpp"

namespace motifae::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("motifae_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    fs::create_directories((dir_ / name).parent_path());
    std::ofstream(dir_ / name) << text;
    return path(name);
  }

  std::string sbm_file(std::uint64_t seed) const {
    const std::vector<std::size_t> sizes{20, 20};
    std::ostringstream out;
    write_edge_list(out, stochastic_block_model(sizes, 0.5, 0.05, seed).graph);
    return write("sbm.txt", out.str());
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int run_cli(std::vector<std::string> args) {
    out_.str({});
    err_.str({});
    return run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, CensusK4) {
  const auto in = write("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  ASSERT_EQ(run_cli({"census", "--input", in, "--out-dir", path("out")}), kSuccess) << err_.str();
  const std::string csv = slurp(path("out/census.csv"));
  EXPECT_EQ(csv, out_.str());
  EXPECT_NE(csv.find("motif_type,total_count,avg_participation\n"), std::string::npos);
  EXPECT_NE(csv.find("M32,4,3.000000\n"), std::string::npos);
  EXPECT_NE(csv.find("M46,1,1.000000\n"), std::string::npos);
  EXPECT_NE(csv.find("M31,0,0.000000\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("out/census.config.txt")));
}

TEST_F(CliTest, CensusPathAndInstanceDump) {
  const auto in = write("p4.txt", "1 2\n2 3\n3 4\n");
  ASSERT_EQ(run_cli({"census", "--input", in, "--out-dir", path("out"), "--dump-instances"}), kSuccess);
  const std::string csv = slurp(path("out/census.csv"));
  EXPECT_NE(csv.find("M31,2,1.500000\n"), std::string::npos);
  EXPECT_NE(csv.find("M41,1,1.000000\n"), std::string::npos);
  EXPECT_EQ(slurp(path("out/instances.txt")), "M31 1 2 3\nM31 2 3 4\nM41 1 2 3 4\n");
}

TEST_F(CliTest, CensusErrors) {
  EXPECT_EQ(run_cli({"census", "--input", write("empty.txt", "# nothing\n"), "--out-dir", path("o")}), kDataError);
  EXPECT_EQ(run_cli({"census", "--input", path("missing.txt")}), kDataError);
  EXPECT_EQ(run_cli({"census", "--input", write("bad.txt", "0 x\n")}), kDataError);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
  EXPECT_EQ(run_cli({"census"}), kUsageError);
  EXPECT_EQ(run_cli({"census", "--bogus", "1"}), kUsageError);
  EXPECT_EQ(run_cli({}), kUsageError);
  EXPECT_EQ(run_cli({"census", "--help"}), kSuccess);
}

TEST_F(CliTest, TrainIsDeterministic) {
  const auto in = sbm_file(2);
  const std::vector<std::string> common{"--input", in, "--seed", "9", "--dim", "8", "--iters", "30"};
  auto a = common;
  a.insert(a.end(), {"--out-dir", path("a")});
  auto b = common;
  b.insert(b.end(), {"--out-dir", path("b")});
  ASSERT_EQ(run_cli({"train"}), kUsageError);
  a.insert(a.begin(), "train");
  b.insert(b.begin(), "train");
  ASSERT_EQ(run_cli(a), kSuccess) << err_.str();
  ASSERT_EQ(run_cli(b), kSuccess) << err_.str();
  for (const char* f : {"embeddings.txt", "loss.csv", "positives.txt", "negatives.txt", "split.json"}) {
    const std::string x = slurp(path(std::string("a/") + f));
    EXPECT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, slurp(path(std::string("b/") + f))) << f;
  }
}

TEST_F(CliTest, TrainWithoutHidingWritesNoSplit) {
  const auto in = sbm_file(3);
  ASSERT_EQ(run_cli({"train", "--input", in, "--out-dir", path("o"), "--hide-fraction", "0", "--dim", "4",
                     "--iters", "3"}),
            kSuccess);
  EXPECT_TRUE(fs::exists(path("o/embeddings.txt")));
  EXPECT_FALSE(fs::exists(path("o/positives.txt")));
  EXPECT_FALSE(fs::exists(path("o/split.json")));
}

TEST_F(CliTest, TrainLossDecreases) {
  const auto in = sbm_file(1);
  ASSERT_EQ(run_cli({"train", "--input", in, "--out-dir", path("o"), "--dim", "16", "--iters", "200",
                     "--dump-proximity"}),
            kSuccess);
  std::istringstream csv(slurp(path("o/loss.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "iteration,l_2nd,l_1st,l_reg,total");
  std::vector<double> totals;
  while (std::getline(csv, line)) totals.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  ASSERT_EQ(totals.size(), 200u);
  EXPECT_LT(totals.back(), totals.front());
  EXPECT_FALSE(slurp(path("o/proximity.txt")).empty());
}

TEST_F(CliTest, TrainWithoutInstancesNamesType) {
  const auto in = write("p5.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n");
  EXPECT_EQ(run_cli({"train", "--input", in, "--out-dir", path("o"), "--motif-type", "M46",
                     "--hide-fraction", "0"}),
            kDataError);
  EXPECT_NE(err_.str().find("M46"), std::string::npos);
}

TEST_F(CliTest, TrainDivergenceAndBadValues) {
  const auto in = sbm_file(4);
  EXPECT_EQ(run_cli({"train", "--input", in, "--out-dir", path("o"), "--learning-rate", "inf", "--iters", "2",
                     "--dim", "4"}),
            kDivergence);
  EXPECT_NE(err_.str().find("iteration 1"), std::string::npos);
  EXPECT_EQ(run_cli({"train", "--input", in, "--beta", "1"}), kUsageError);
  EXPECT_EQ(run_cli({"train", "--input", in, "--dim", "abc"}), kUsageError);
  EXPECT_EQ(run_cli({"train", "--input", in, "--motif-type", "M99"}), kUsageError);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto in = sbm_file(5);
  const auto cfg = write("run.cfg", "# settings\ndim = 4\niters = 2\nseed = 77\ninput = " + in + "\n");
  ASSERT_EQ(run_cli({"train", "--config", cfg, "--out-dir", path("o"), "--dim", "5"}), kSuccess) << err_.str();
  const std::string echo = slurp(path("o/train.config.txt"));
  EXPECT_NE(echo.find("dim = 5\n"), std::string::npos);
  EXPECT_NE(echo.find("iters = 2\n"), std::string::npos);
  EXPECT_NE(echo.find("seed = 77\n"), std::string::npos);
  EXPECT_EQ(slurp(path("o/embeddings.txt")).substr(0, 5), "40 5\n");

  // The echoed config reproduces the run.
  const std::string first = slurp(path("o/embeddings.txt"));
  ASSERT_EQ(run_cli({"train", "--config", path("o/train.config.txt"), "--out-dir", path("again")}), kSuccess);
  EXPECT_EQ(slurp(path("again/embeddings.txt")), first);

  EXPECT_EQ(run_cli({"train", "--config", write("bad.cfg", "dimension = 3\n")}), kUsageError);
  EXPECT_EQ(run_cli({"train", "--config", path("nope.cfg")}), kUsageError);
}

TEST_F(CliTest, RunConfigTextRoundTrip) {
  RunConfig a;
  a.set("hidden", "8,4");
  a.set("gamma", "0.000123");
  a.set("union-types", "M31,M32");
  a.set("weak-ties", "true");
  a.set("row-scaling", "row");
  RunConfig b;
  apply_config_text(b, a.to_text());
  EXPECT_EQ(b.to_text(), a.to_text());
  EXPECT_EQ(b.train.hidden_dims, (std::vector<std::size_t>{8, 4}));
  EXPECT_EQ(b.train.loss.gamma, 0.000123);
  EXPECT_THROW(a.set("weak-ties", "maybe"), UsageError);
}

TEST_F(CliTest, EvaluatePerfectEmbeddings) {
  // Two disjoint 5-cliques: every non-edge crosses between them.
  std::string edges;
  for (int base : {0, 5})
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) edges += std::to_string(base + a) + " " + std::to_string(base + b) + "\n";
  const auto in = write("cliques.txt", edges);
  ASSERT_EQ(run_cli({"train", "--input", in, "--out-dir", path("o"), "--dim", "2", "--iters", "1",
                     "--motif-type", "M32"}),
            kSuccess) << err_.str();
  std::string emb = "10 2\n";
  for (int v = 0; v < 10; ++v) emb += std::to_string(v) + (v < 5 ? " 1 0\n" : " 0 1\n");
  write("o/embeddings.txt", emb);
  ASSERT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o"), "--ks", "1", "--dump-scores"}),
            kSuccess) << err_.str();
  const auto metrics = nlohmann::json::parse(slurp(path("o/metrics.json")));
  ASSERT_EQ(metrics.size(), 4u);
  EXPECT_EQ(metrics[0]["method"], "MODEL");
  EXPECT_EQ(metrics[0]["auc"].get<double>(), 1.0);
  EXPECT_EQ(metrics[0]["precision"]["1"].get<double>(), 1.0);
  EXPECT_TRUE(fs::exists(path("o/scores_MODEL.csv")));
  EXPECT_TRUE(fs::exists(path("o/scores_CN.csv")));
  EXPECT_EQ(slurp(path("o/metrics.csv")), out_.str());
}

TEST_F(CliTest, EvaluateCommonNeighboursByHand) {
  // Path 0-1-2-3-4-5 with chords (0,2) and (3,5); (0,2) hidden.
  const auto in = write("g.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n0 2\n3 5\n");
  write("split/positives.txt", "0 2\n");
  write("split/negatives.txt", "0 3\n1 3\n");
  write("split/split.json", R"({"seed": 1, "hide_fraction": 0.15, "shortfall": 0, "original_edge_count": 7})");
  write("split/embeddings.txt", "6 1\n0 1\n1 1\n2 1\n3 1\n4 1\n5 1\n");
  ASSERT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o"), "--split-dir", path("split"),
                     "--embeddings", path("split/embeddings.txt"), "--ks", "1", "--baselines", "CN,JC"}),
            kSuccess) << err_.str();
  const auto metrics = nlohmann::json::parse(slurp(path("o/metrics.json")));
  ASSERT_EQ(metrics.size(), 3u);
  EXPECT_EQ(metrics[1]["method"], "CN");
  // CN: positive {1}; negatives {0, 1}
  EXPECT_EQ(metrics[1]["auc"].get<double>(), 0.75);
  EXPECT_EQ(metrics[0]["auc"].get<double>(), 0.5);
}

TEST_F(CliTest, EvaluateErrors) {
  const auto in = write("g.txt", "0 1\n1 2\n2 3\n3 0\n");
  EXPECT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o")}), kDataError);
  EXPECT_NE(err_.str().find("split"), std::string::npos);

  write("o/positives.txt", "0 1\n");
  write("o/negatives.txt", "0 2\n");
  write("o/split.json", R"({"seed": 1, "hide_fraction": 0.25, "shortfall": 0, "original_edge_count": 4})");
  EXPECT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o")}), kDataError);
  write("o/embeddings.txt", "3 1\n0 1\n1 1\n2 1\n");
  EXPECT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o")}), kDataError);
  write("o/embeddings.txt", "4 1\n0 1\n1 1\n2 1\n3 1\n");
  EXPECT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o")}), kSuccess) << err_.str();
  EXPECT_EQ(run_cli({"evaluate", "--input", in, "--out-dir", path("o"), "--ks", "1,9"}), kSuccess);
  EXPECT_NE(out_.str().find("precision@9 skipped"), std::string::npos);
  EXPECT_NE(slurp(path("o/metrics.csv")).find("MODEL,0.500000,"), std::string::npos);
}

TEST_F(CliTest, SweepTwoTypes) {
  const auto in = sbm_file(1);
  ASSERT_EQ(run_cli({"sweep", "--input", in, "--out-dir", path("s"), "--motif-types", "M31,M32", "--dim", "16"}),
            kSuccess) << err_.str();
  std::istringstream csv(slurp(path("s/sweep.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("motif_type,auc,", 0), 0u);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    const auto first = line.find(',');
    const double auc = std::stod(line.substr(first + 1, line.find(',', first + 1) - first - 1));
    EXPECT_GT(auc, 0.5) << line;
  }
  EXPECT_EQ(rows, 2);
  EXPECT_TRUE(fs::exists(path("s/M31/embeddings.txt")));
  EXPECT_TRUE(fs::exists(path("s/M32/metrics.json")));
}

TEST_F(CliTest, SweepSingleTypeMatchesTrainThenEvaluate) {
  const auto in = sbm_file(6);
  const std::vector<std::string> common{"--input", in, "--dim", "6", "--iters", "20", "--seed", "3"};
  auto sweep = common;
  sweep.insert(sweep.begin(), "sweep");
  sweep.insert(sweep.end(), {"--out-dir", path("s"), "--motif-types", "M32"});
  ASSERT_EQ(run_cli(sweep), kSuccess) << err_.str();
  auto train = common;
  train.insert(train.begin(), "train");
  train.insert(train.end(), {"--out-dir", path("t"), "--motif-type", "M32"});
  ASSERT_EQ(run_cli(train), kSuccess);
  auto eval = common;
  eval.insert(eval.begin(), "evaluate");
  eval.insert(eval.end(), {"--out-dir", path("t")});
  ASSERT_EQ(run_cli(eval), kSuccess);
  EXPECT_EQ(slurp(path("s/M32/embeddings.txt")), slurp(path("t/embeddings.txt")));
  EXPECT_EQ(slurp(path("s/M32/metrics.json")), slurp(path("t/metrics.json")));
}

TEST_F(CliTest, SweepWithoutTypesIsUsageError) {
  const auto in = sbm_file(1);
  EXPECT_EQ(run_cli({"sweep", "--input", in, "--out-dir", path("s"), "--motif-types", ""}), kUsageError);
}

}  // namespace
}  // namespace motifae::cli
