#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dynemb/cli.hpp"
#include "synthetic.hpp"

using namespace dynemb;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dynemb_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    synth::CommunityStreamParams p;
    p.nodes = 30;
    p.snapshots = 10;
    p.p_in = 0.3;
    p.p_out = 0.02;
    p.seed = 5;
    const auto s = synth::community_stream(p);
    std::ofstream edges(path("edges.txt"));
    edges << "# src dst t\n";
    for (const auto& snap : s.seq.snapshots) {
      for (const Edge& e : snap.edges()) {
        edges << s.seq.registry.label(e.u) << ' ' << s.seq.registry.label(e.v) << ' ' << snap.index() << '\n';
      }
    }
    std::ofstream labels(path("labels.txt"));
    for (const auto& [id, c] : s.labels.classes) labels << s.seq.registry.label(id) << " c" << c << '\n';
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::vector<std::string> fast(std::vector<std::string> args) const {
    for (std::string a : {"--walks_per_node", "3", "--walk_length", "10", "--epochs_lstm", "1", "--epochs_sgns",
                          "1", "--k", "3", "--context", "3"}) {
      args.push_back(a);
    }
    return args;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, IngestSummary) {
  const CliResult r = cli({"ingest", "--input", path("edges.txt"), "--by-index"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("nodes 30"), std::string::npos);
  EXPECT_NE(r.out.find("snapshots 10"), std::string::npos);
}

TEST_F(CliTest, EmbedManifestEchoesFlags) {
  const CliResult r = cli(fast({"embed", "--input", path("edges.txt"), "--by-index", "--method", "lstm-node2vec", "--L",
                          "10", "--dim", "128", "--p", "0.25", "--q", "1", "--seed", "7", "--out", path("emb")}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = nlohmann::json::parse(slurp(dir_ / "emb" / "manifest.json"));
  EXPECT_EQ(m["method"], "lstm-node2vec");
  EXPECT_EQ(m["config"]["L"], 10);
  EXPECT_EQ(m["config"]["dim"], 128);
  EXPECT_EQ(m["config"]["p"], 0.25);
  EXPECT_EQ(m["config"]["q"], 1.0);
  EXPECT_EQ(m["seed"], 7);
  EXPECT_EQ(m["version"], kVersion);
  EXPECT_EQ(m["graph"]["input_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(m["time_points"], nlohmann::json::array({9}));
  EXPECT_TRUE(fs::exists(dir_ / "emb" / "Z_9.emb"));
}

TEST_F(CliTest, ExitCodes) {
  const CliResult missing = cli({"embed", "--input", path("nope.txt"), "--by-index", "--out", path("x")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find(path("nope.txt")), std::string::npos);
  EXPECT_EQ(cli({"embed", "--input", path("edges.txt"), "--by-index", "--L", "1", "--out", path("x")}).code, 2);
  EXPECT_EQ(cli({"embed", "--input", path("edges.txt"), "--by-index", "--bogus", "--out", path("x")}).code, 2);
  EXPECT_EQ(cli({"embed", "--input", path("edges.txt"), "--out", path("x")}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, InjectIsDeterministicAndCountsRows) {
  const std::vector<std::string> base{"inject", "--input", path("edges.txt"), "--by-index", "--n", "5", "--k", "3",
                                      "--m", "2", "--seed", "7", "--out"};
  auto a = base, b = base;
  a.push_back(path("inj_a"));
  b.push_back(path("inj_b"));
  ASSERT_EQ(cli(a).code, 0);
  ASSERT_EQ(cli(b).code, 0);
  for (const char* f : {"labels.txt", "G_0.edges", "G_7.edges"}) {
    EXPECT_EQ(slurp(dir_ / "inj_a" / f), slurp(dir_ / "inj_b" / f)) << f;
  }
  std::size_t edges = 0;
  for (int t = 0; t < 10; ++t) edges += line_count(dir_ / "inj_a" / ("G_" + std::to_string(t) + ".edges"));
  EXPECT_EQ(line_count(dir_ / "inj_a" / "labels.txt"), edges);
  const auto m = nlohmann::json::parse(slurp(dir_ / "inj_a" / "manifest.json"));
  std::size_t injected = 0;
  for (const auto& a : m["anomalies"]) injected += a["others"].size() * a["snapshots"].size();
  std::size_t anomalous_rows = 0;
  std::ifstream in(dir_ / "inj_a" / "labels.txt");
  for (std::string line; std::getline(in, line);) anomalous_rows += line.back() == '1';
  EXPECT_EQ(anomalous_rows, injected);
  EXPECT_EQ(injected, 2u * 5 * 3);

  auto zero = base;
  zero[5] = "0";
  zero.push_back(path("inj_c"));
  EXPECT_EQ(cli(zero).code, 2);
}

TEST_F(CliTest, EvalAnomalyReport) {
  ASSERT_EQ(cli({"inject", "--input", path("edges.txt"), "--by-index", "--n", "5", "--k", "2", "--m", "0",
                 "--start", "2", "--seed", "3", "--out", path("inj")})
                .code,
            0);
  ASSERT_EQ(cli(fast({"embed", "--snapshot-dir", path("inj"), "--L", "3", "--dim", "8", "--seed", "3", "--out",
                      path("emb")}))
                .code,
            0);
  const CliResult r = cli({"eval", "--task", "anomaly", "--emb", path("emb"), "--labels", path("inj/labels.txt"), "--out",
                     path("rep")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("average auc"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(dir_ / "rep" / "report.json"));
  EXPECT_EQ(j["task"], "anomaly");
  EXPECT_FALSE(j["per_time_point"].empty());
  EXPECT_TRUE(j["per_time_point"][0].contains("auc"));
  EXPECT_TRUE(j["average"].contains("auc"));
  EXPECT_EQ(j["config"]["op"], "l1");
}

TEST_F(CliTest, EvalNodeNeedsLabels) {
  ASSERT_EQ(cli(fast({"embed", "--input", path("edges.txt"), "--by-index", "--L", "3", "--dim", "8", "--out",
                      path("emb")}))
                .code,
            0);
  EXPECT_EQ(cli({"eval", "--task", "node", "--emb", path("emb")}).code, 2);
  const CliResult r = cli({"eval", "--task", "node", "--emb", path("emb"), "--labels", path("labels.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("average macro_f1"), std::string::npos);
  const CliResult link = cli({"eval", "--task", "link", "--emb", path("emb"), "--input", path("edges.txt"), "--by-index",
                        "--out", path("rep")});
  EXPECT_EQ(link.code, 0) << link.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "rep" / "report.json"))["config"]["op"], "hadamard");
}

TEST_F(CliTest, SweepL) {
  const CliResult r = cli(fast({"sweep-L", "--values", "3,4,5,4", "--task", "node", "--labels", path("labels.txt"),
                          "--input", path("edges.txt"), "--by-index", "--dim", "8", "--out", path("sweep")}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("duplicate"), std::string::npos);
  std::ifstream in(dir_ / "sweep" / "sweep.csv");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "L,macro_f1,micro_f1");
  EXPECT_EQ(lines[1].substr(0, 2), "3,");
  EXPECT_EQ(lines[3].substr(0, 2), "5,");
  EXPECT_EQ(cli({"sweep-L", "--values", "", "--task", "node", "--labels", path("labels.txt"), "--input",
                 path("edges.txt"), "--by-index", "--out", path("sweep")})
                .code,
            2);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  std::ofstream(path("cfg.json")) << R"({"dim": 8, "L": 4, "seed": 11, "walks_per_node": 2, "walk_length": 8,
    "epochs_lstm": 1, "epochs_sgns": 1, "k": 2, "input": ")" << path("edges.txt") << R"(", "by-index": true})";
  const CliResult r = cli({"embed", "--config", path("cfg.json"), "--L", "3", "--out", path("emb")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = nlohmann::json::parse(slurp(dir_ / "emb" / "manifest.json"));
  EXPECT_EQ(m["config"]["L"], 3);
  EXPECT_EQ(m["config"]["dim"], 8);
  EXPECT_EQ(m["seed"], 11);
  std::ofstream(path("bad.json")) << R"({"no_such_key": 1})";
  EXPECT_EQ(cli({"embed", "--config", path("bad.json"), "--out", path("emb")}).code, 2);
}
