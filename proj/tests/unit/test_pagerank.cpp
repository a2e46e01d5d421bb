#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "docrank/pagerank.hpp"
#include "test_support.hpp"

namespace docrank {
namespace {

WeightMatrix worked_matrix() { return weight_matrix(testing::worked_graph()); }

TEST(Transition, WorkedExampleMatrixEntries) {
  const auto m = build_transition(worked_matrix());
  const char* order[] = {"A", "B", "C", "D"};
  // Rows are targets, columns are sources, as printed in the worked example.
  const double expected[4][4] = {{0, 1.0 / 2, 0, 0},
                                 {3.0 / 11, 0, 1, 1.0 / 2},
                                 {3.0 / 11, 0, 0, 1.0 / 2},
                                 {5.0 / 11, 1.0 / 2, 0, 0}};
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      EXPECT_NEAR(m.at(order[u], order[v]), expected[u][v], 1e-12) << order[u] << "," << order[v];
    }
  }
}

TEST(Transition, DanglingColumnIsUniform) {
  WeightMatrix single({"X"});
  EXPECT_DOUBLE_EQ(build_transition(single).at(0, 0), 1.0);

  WeightMatrix pair({"X", "Y"});
  pair.add("X", "Y", 2.0);
  const auto m = build_transition(pair);
  EXPECT_DOUBLE_EQ(m.at("X", "Y"), 0.5);  // Y dangles
  EXPECT_DOUBLE_EQ(m.at("Y", "Y"), 0.5);
  EXPECT_DOUBLE_EQ(m.at("Y", "X"), 1.0);
}

TEST(Transition, ColumnsAreStochastic) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = build_transition(weight_matrix(testing::random_graph(rng, 1 + trial % 8, 0.3)));
    for (std::size_t v = 0; v < m.size(); ++v) {
      double column = 0.0;
      for (std::size_t u = 0; u < m.size(); ++u) column += m.at(u, v);
      ASSERT_NEAR(column, 1.0, 1e-12);
    }
  }
}

TEST(Solve, WorkedExampleScoresToTwoDecimals) {
  const auto s = solve(testing::worked_graph());
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.score("A"), 0.19, 0.005);
  EXPECT_NEAR(s.score("B"), 0.36, 0.005);
  EXPECT_NEAR(s.score("C"), 0.19, 0.005);
  EXPECT_NEAR(s.score("D"), 0.26, 0.005);
  EXPECT_NEAR(s.sum(), 1.0, 1e-9);
  EXPECT_LT(s.final_error, 1e-7);
  EXPECT_LE(s.iterations_used, 100u);
}

TEST(Solve, SingleNodeScoresOne) {
  WeightMatrix single({"X"});
  const auto s = solve(single);
  EXPECT_NEAR(s.scores[0], 1.0, 1e-15);
}

TEST(Solve, TwoNodeSystem) {
  // a = d*b/2 + (1-d)/2 and b = d*(a + b/2) + (1-d)/2, solved by hand:
  // a = 0.2/0.57 = 20/57, b = 37/57.
  WeightMatrix m({"A", "B"});
  m.add("A", "B", 1.0);
  const auto s = solve(m);
  EXPECT_NEAR(s.score("A"), 20.0 / 57.0, 1e-6);
  EXPECT_NEAR(s.score("B"), 37.0 / 57.0, 1e-6);
  EXPECT_NEAR(s.score("A"), 0.3509, 5e-5);
  EXPECT_NEAR(s.score("B"), 0.6491, 5e-5);
}

TEST(Solve, LookupWorksForUnsortedMatrixOrder) {
  WeightMatrix m({"Zed", "Amy", "Mid"});
  m.add("Zed", "Amy", 1.0);
  const auto s = solve(m);
  const auto direct = solve_direct(m);
  for (const char* name : {"Zed", "Amy", "Mid"}) EXPECT_NEAR(s.score(name), direct.score(name), 1e-6);
  EXPECT_GT(s.score("Amy"), s.score("Zed"));
  EXPECT_THROW(s.score("Nobody"), UnknownNodeError);
}

TEST(Solve, ReportsNonConvergenceInsteadOfFailing) {
  SolverConfig config;
  config.max_iterations = 3;
  const auto s = solve(testing::worked_graph(), config);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations_used, 3u);
  EXPECT_EQ(s.error_history.size(), 3u);
  EXPECT_GE(s.final_error, config.tolerance);
}

TEST(Solve, RejectsInvalidConfigAndEmptyGraph) {
  SolverConfig bad;
  bad.damping = 1.0;
  EXPECT_THROW(solve(worked_matrix(), bad), Error);
  bad = {};
  bad.tolerance = 0.0;
  EXPECT_THROW(solve(worked_matrix(), bad), Error);
  bad = {};
  bad.max_iterations = 0;
  EXPECT_THROW(solve(worked_matrix(), bad), Error);
  EXPECT_THROW(solve(WeightMatrix{}), Error);
}

TEST(SolveDirect, AgreesWithIterationOnWorkedExample) {
  const auto iterative = solve(worked_matrix());
  const auto direct = solve_direct(worked_matrix());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(iterative.scores[i], direct.scores[i], 1e-6);
}

TEST(SolveDirect, EdgelessGraphIsUniform) {
  WeightMatrix m({"P", "Q", "R", "S", "T"});
  for (double s : solve_direct(m).scores) EXPECT_NEAR(s, 0.2, 1e-15);
  for (double s : solve(m).scores) EXPECT_NEAR(s, 0.2, 1e-15);
}

TEST(SolveDirect, RefusesGraphsAboveTheBound) {
  std::vector<std::string> names;
  for (int i = 0; i < 65; ++i) names.push_back("N" + std::to_string(100 + i));
  WeightMatrix big(names);
  EXPECT_THROW(solve_direct(big), Error);
  SolverConfig wider;
  wider.direct_bound = 65;
  EXPECT_NO_THROW(solve_direct(big, wider));
}

TEST(Properties, OracleEquivalenceOnSmallRandomGraphs) {
  std::mt19937_64 rng(2024);
  const WeightMode modes[] = {WeightMode::Uniform, WeightMode::Empirical,
                              WeightMode::BackRecommendation, WeightMode::EmpiricalPlusBack};
  for (int trial = 0; trial < 240; ++trial) {
    auto g = testing::random_graph(rng, 1 + trial % 8, 0.35);
    g.set_weight_settings({modes[trial % 4], 0.5});
    const auto matrix = weight_matrix(g);
    const auto a = solve(matrix);
    const auto b = solve_direct(matrix);
    ASSERT_TRUE(a.converged);
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a.scores[i], b.scores[i], 1e-6);
  }
}

TEST(Properties, NormalizationPositivityAndMonotoneError) {
  std::mt19937_64 rng(55);
  const double d = 0.85;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + (trial * 7) % 120;
    const auto s = solve(testing::random_graph(rng, m, 3.0 / static_cast<double>(m + 1)));
    ASSERT_NEAR(s.sum(), 1.0, 1e-6);
    for (double x : s.scores) ASSERT_GE(x, (1 - d) / static_cast<double>(m) - 1e-12);
    for (std::size_t i = 2; i < s.error_history.size(); ++i) {
      ASSERT_LE(s.error_history[i], s.error_history[i - 1] * (1 + 1e-9) + 1e-15);
    }
  }
}

TEST(Properties, ScaleInvariance) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 30; ++trial) {
    const auto matrix = weight_matrix(testing::random_graph(rng, 2 + trial % 20, 0.3));
    const auto base = solve(matrix);
    for (double c : {0.5, 3.0, 10.0}) {
      const auto scaled = solve(matrix.scaled(c));
      for (std::size_t i = 0; i < base.size(); ++i) ASSERT_NEAR(base.scores[i], scaled.scores[i], 1e-8);
    }
  }
}

TEST(Properties, PermutationEquivariance) {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(rng, 7, 0.4);
    // Relabel Ni -> R<perm[i]> and compare scores module by module.
    std::vector<int> perm(7);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto rename = [&](const std::string& name) {
      return "R" + std::to_string(perm[static_cast<std::size_t>(std::stoi(name.substr(1)))]);
    };
    DependenceGraph relabeled;
    for (const auto& node : g.nodes()) relabeled.add_node({rename(node.name), node.kind});
    for (const auto& [key, counts] : g.edges()) {
      relabeled.add_counts({rename(key.first), g.kind_of(key.first)},
                           {rename(key.second), g.kind_of(key.second)}, counts);
    }
    const auto a = solve(g);
    const auto b = solve(relabeled);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_NEAR(a.scores[i], b.score(rename(a.names[i])), 1e-12);
    }
  }
}

TEST(Properties, StarHubDominatesLeaves) {
  for (std::size_t leaves : {1u, 2u, 5u, 20u}) {
    DependenceGraph g;
    const ModuleId hub{"Hub", ModuleKind::Class};
    for (std::size_t i = 0; i < leaves; ++i) {
      g.add_counts({"Leaf" + std::to_string(i), ModuleKind::Class}, hub, {0, 1, 0, 0});
    }
    const auto s = solve(g);
    for (std::size_t i = 0; i < leaves; ++i) {
      EXPECT_GT(s.score("Hub"), s.score("Leaf" + std::to_string(i)));
    }
  }
}

TEST(Properties, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 rng(4);
  const auto matrix = weight_matrix(testing::random_graph(rng, 3000, 0.002));
  SolverConfig one, many;
  many.threads = 4;
  EXPECT_EQ(solve(matrix, one).scores, solve(matrix, many).scores);
}

TEST(ScoreSubset, FullSubsetIsIdentity) {
  const auto g = testing::worked_graph();
  const std::set<std::string> all = {"A", "B", "C", "D"};
  const auto full = solve(g);
  for (auto mode : {SubsetMode::SubsetGraph, SubsetMode::WholeProject}) {
    EXPECT_EQ(score_subset(g, all, mode).scores, full.scores);
  }
}

TEST(ScoreSubset, InducedSubgraphOfAandB) {
  const auto s = score_subset(testing::worked_graph(), {"A", "B"}, SubsetMode::SubsetGraph);
  // Oracle: the 2-node graph A->B (3), B->A (1) is symmetric after normalization.
  WeightMatrix m({"A", "B"});
  m.add("A", "B", 3.0);
  m.add("B", "A", 1.0);
  const auto direct = solve_direct(m);
  EXPECT_NEAR(s.score("A"), direct.score("A"), 1e-6);
  EXPECT_NEAR(s.score("B"), direct.score("B"), 1e-6);
  EXPECT_NEAR(s.score("A"), 0.5, 1e-6);
}

TEST(ScoreSubset, WholeProjectRestrictsWithoutRenormalizing) {
  const auto g = testing::worked_graph();
  const auto full = solve(g);
  const auto s = score_subset(g, {"A", "B", "D"}, SubsetMode::WholeProject);
  ASSERT_EQ(s.names, (std::vector<std::string>{"A", "B", "D"}));
  EXPECT_EQ(s.score("A"), full.score("A"));
  EXPECT_EQ(s.score("D"), full.score("D"));
  EXPECT_LT(s.sum(), 1.0);
}

TEST(ScoreSubset, Errors) {
  const auto g = testing::worked_graph();
  EXPECT_THROW(score_subset(g, {}, SubsetMode::SubsetGraph), Error);
  EXPECT_THROW(score_subset(g, {"A", "Z"}, SubsetMode::WholeProject), UnknownNodeError);
}

}  // namespace
}  // namespace docrank
