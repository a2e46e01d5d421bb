#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "commands.hpp"
#include "docrank/graph_io.hpp"
#include "docrank/reports.hpp"
#include "docrank/tabular_io.hpp"
#include "test_support.hpp"

namespace docrank {
namespace {

using testing::read_text;
using testing::TempDir;
using testing::write_text;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, cli::Environment env = {}) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  TempDir dir{"cli"};
  std::string path(const std::string& name) const { return (dir.path() / name).string(); }

  void write_worked_labels() { write_text(dir.path() / "labels.csv", "module,label\nA,0\nB,1\nC,0\nD,1\n"); }
};

TEST_F(CliTest, WorkedExampleEndToEnd) {
  const auto src = testing::worked_example_dir().string();
  auto r = run_cli({"extract", src, "-o", path("g.graph")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(serialize_graph(deserialize_graph(read_text(path("g.graph")))),
            serialize_graph(testing::worked_graph()));

  r = run_cli({"rank", path("g.graph"), "-o", path("rank.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto scores = parse_ranking_csv(read_text(path("rank.csv")));
  EXPECT_NEAR(scores.score("A"), 0.19, 0.005);
  EXPECT_NEAR(scores.score("B"), 0.36, 0.005);
  EXPECT_NEAR(scores.score("C"), 0.19, 0.005);
  EXPECT_NEAR(scores.score("D"), 0.26, 0.005);

  r = run_cli({"rank", path("g.graph"), "-o", path("sel.csv"), "--select", "25"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(read_text(path("sel.csv")).find("\nB,"), std::string::npos);
  EXPECT_NE(read_text(path("sel.csv")).find(",1,1\n"), std::string::npos);

  write_worked_labels();
  r = run_cli({"evaluate", path("rank.csv"), "-l", path("labels.csv"), "-o", path("m.json"),
               "--runs", "0", "--thresholds", "25,50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto metrics = read_text(path("m.json"));
  EXPECT_NE(metrics.find("\"approach\": \"rank\""), std::string::npos);
  EXPECT_EQ(metrics.find("\"bootstrap\""), std::string::npos);
}

TEST_F(CliTest, EvaluateAcceptsGraphFilesDirectly) {
  write_text(dir.path() / "g.graph", serialize_graph(testing::worked_graph()));
  write_worked_labels();
  const auto r = run_cli({"evaluate", path("g.graph"), "-l", path("labels.csv"), "-o",
                          path("m.json"), "--runs", "5", "--variant", "wr"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto loaded = parse_metrics_json(read_text(path("m.json")));
  EXPECT_EQ(loaded.approach, "pagerank-wr");
  EXPECT_EQ(loaded.variant, "wr");
  EXPECT_EQ(loaded.runs, 5u);
}

TEST_F(CliTest, BootstrapAndCompareAreDeterministic) {
  std::mt19937_64 rng(13);
  const auto g = testing::random_graph(rng, 60, 0.06);
  write_text(dir.path() / "g.graph", serialize_graph(g));
  std::string labels = "module,label\n";
  const auto hubs = testing::hub_labels(g, 9);
  for (const auto& [m, important] : hubs.entries()) {
    labels += m + (important ? ",1\n" : ",0\n");
  }
  write_text(dir.path() / "labels.csv", labels);

  for (const char* variant : {"base", "w"}) {
    for (const char* suffix : {"1", "2"}) {
      const auto out = path(std::string(variant) + suffix + ".json");
      const auto r = run_cli({"bootstrap", path("g.graph"), "-l", path("labels.csv"), "-o", out,
                              "--runs", "20", "--variant", variant, "--threads",
                              suffix[0] == '1' ? "1" : "3"});
      ASSERT_EQ(r.code, 0) << r.err;
    }
    EXPECT_EQ(read_text(path(std::string(variant) + "1.json")),
              read_text(path(std::string(variant) + "2.json")));
  }
  auto r = run_cli({"compare", path("base1.json"), path("w1.json"), "-o", path("c1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run_cli({"compare", path("base2.json"), path("w2.json"), "-o", path("c2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_text(path("c1.json")), read_text(path("c2.json")));
  EXPECT_NE(read_text(path("c1.json")).find("\"p_adjusted\""), std::string::npos);
}

TEST_F(CliTest, CompareRefusesMismatchedRuns) {
  write_text(dir.path() / "g.graph", serialize_graph(testing::worked_graph()));
  write_worked_labels();
  ASSERT_EQ(run_cli({"bootstrap", path("g.graph"), "-l", path("labels.csv"), "-o", path("a.json"),
                     "--runs", "4"}).code, 0);
  ASSERT_EQ(run_cli({"bootstrap", path("g.graph"), "-l", path("labels.csv"), "-o", path("b.json"),
                     "--runs", "5"}).code, 0);
  const auto r = run_cli({"compare", path("a.json"), path("b.json"), "-o", path("c.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("run counts differ"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("c.json")));
}

TEST_F(CliTest, EmptyDirectoryGivesEmptyGraph) {
  std::filesystem::create_directories(dir.path() / "empty");
  auto r = run_cli({"extract", path("empty"), "-o", path("g.graph")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(deserialize_graph(read_text(path("g.graph"))).node_count(), 0u);
  // Ranking an empty graph is an error and writes nothing.
  r = run_cli({"rank", path("g.graph"), "-o", path("r.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("docrank: error:"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("r.csv")));
}

TEST_F(CliTest, MissingSourceDirectoryFails) {
  const auto r = run_cli({"extract", path("nowhere"), "-o", path("g.graph")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(std::filesystem::exists(path("g.graph")));
}

TEST_F(CliTest, MalformedSourceIsSkippedUnlessStrict) {
  write_text(dir.path() / "src" / "Good.java", "class Good { Other o; }\nclass Other {}\n");
  write_text(dir.path() / "src" / "Bad.java", "class Bad { void f( }\n");
  auto r = run_cli({"extract", path("src"), "-o", path("g.graph")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("Bad.java"), std::string::npos);
  EXPECT_TRUE(deserialize_graph(read_text(path("g.graph"))).contains("Good"));

  r = run_cli({"extract", path("src"), "-o", path("strict.graph"), "--strict"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Bad.java"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("strict.graph")));
}

TEST_F(CliTest, MissingLabeledModulesAreNamed) {
  write_text(dir.path() / "g.graph", serialize_graph(testing::worked_graph()));
  write_text(dir.path() / "labels.csv", "A,1\nGhost,0\n");
  const auto r = run_cli({"evaluate", path("g.graph"), "-l", path("labels.csv"), "-o",
                          path("m.json"), "--runs", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Ghost"), std::string::npos);
}

TEST_F(CliTest, LabelsWithoutImportantModulesAreRejected) {
  write_text(dir.path() / "g.graph", serialize_graph(testing::worked_graph()));
  write_text(dir.path() / "labels.csv", "A,0\nB,0\n");
  const auto r = run_cli({"evaluate", path("g.graph"), "-l", path("labels.csv"), "-o",
                          path("m.json"), "--runs", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no module as important"), std::string::npos);
}

TEST_F(CliTest, ConfigPrecedence) {
  write_text(dir.path() / "env.conf", "damping = 0.5\nvariant = w\n");
  write_text(dir.path() / "file.conf", "damping = 0.6\n");
  const auto env_file = path("env.conf");

  // Environment file alone.
  auto c = cli::effective_config(env_file, {});
  EXPECT_EQ(c.damping, 0.5);
  // Flags beat files.
  c = cli::effective_config(env_file, {{"damping", "0.7"}});
  EXPECT_EQ(c.damping, 0.7);
  EXPECT_EQ(c.variant, Variant::W);

  // Through run(): --config replaces DOCRANK_CONFIG, flags override both.
  write_text(dir.path() / "g.graph", serialize_graph(testing::worked_graph()));
  cli::Environment env;
  env.config_path = env_file;
  ASSERT_EQ(run_cli({"rank", path("g.graph"), "-o", path("env.csv")}, env).code, 0);
  ASSERT_EQ(run_cli({"rank", path("g.graph"), "-o", path("file.csv"), "--config", path("file.conf")},
                    env).code, 0);
  ASSERT_EQ(run_cli({"rank", path("g.graph"), "-o", path("flag.csv"), "--config", path("file.conf"),
                     "--damping", "0.5", "--variant", "w"}, env).code, 0);
  RunConfig from_env;
  from_env.damping = 0.5;
  from_env.variant = Variant::W;
  RunConfig from_file;
  from_file.damping = 0.6;
  EXPECT_NE(read_text(path("env.csv")).find("config=" + from_env.hash()), std::string::npos);
  EXPECT_NE(read_text(path("file.csv")).find("config=" + from_file.hash()), std::string::npos);
  EXPECT_EQ(read_text(path("flag.csv")), read_text(path("env.csv")));
}

TEST_F(CliTest, UsageErrorsAndHelp) {
  EXPECT_NE(run_cli({}).code, 0);
  EXPECT_NE(run_cli({"rank"}).code, 0);
  EXPECT_NE(run_cli({"frobnicate"}).code, 0);
  const auto help = run_cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("evaluate"), std::string::npos);
  write_text(dir.path() / "g.graph", serialize_graph(testing::worked_graph()));
  EXPECT_EQ(run_cli({"rank", path("g.graph"), "-o", path("r.csv"), "--damping", "2"}).code, 1);
  EXPECT_EQ(run_cli({"rank", path("missing.graph"), "-o", path("r.csv")}).code, 1);
  write_worked_labels();
  const auto r = run_cli({"bootstrap", path("g.graph"), "-l", path("labels.csv"), "-o",
                          path("m.json"), "--runs", "0"});
  EXPECT_EQ(r.code, 1);
}

}  // namespace
}  // namespace docrank
