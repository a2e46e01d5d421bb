#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "docrank/bootstrap.hpp"
#include "docrank/evaluation.hpp"
#include "test_support.hpp"

namespace docrank {
namespace {

LabelSet labels_with(std::size_t n, std::size_t k) {
  LabelSet labels;
  for (std::size_t i = 0; i < n; ++i) labels.set("M" + std::to_string(10 + i), i < k);
  return labels;
}

TEST(LabelSet, CountsAndLookups) {
  LabelSet labels({{"A", true}, {"B", false}, {"C", true}});
  EXPECT_EQ(labels.k_true(), 2u);
  EXPECT_EQ(labels.n_total(), 3u);
  EXPECT_TRUE(labels.is_important("A"));
  EXPECT_FALSE(labels.is_important("B"));
  EXPECT_FALSE(labels.contains("Z"));
  EXPECT_THROW(labels.is_important("Z"), UnknownNodeError);
  labels.set("A", false);
  EXPECT_EQ(labels.k_true(), 1u);
  const auto sub = labels.restricted({"B", "C"});
  EXPECT_EQ(sub.n_total(), 2u);
  EXPECT_EQ(sub.k_true(), 1u);
}

TEST(Confusion, CountsEveryCell) {
  LabelSet labels({{"A", true}, {"B", true}, {"C", false}, {"D", false}});
  const auto cm = confusion({"A", "C"}, labels);
  EXPECT_EQ(cm, (ConfusionMatrix{1, 1, 1, 1}));
  EXPECT_EQ(cm.predicted(), 2u);
  EXPECT_EQ(cm.hits(), 1u);
  EXPECT_THROW(confusion({"Z"}, labels), Error);
}

TEST(Indicators, ExactWorkedValues) {
  // n = 10, k = 4, x = 5 predicted, y = 3 hits.
  const ConfusionMatrix cm{3, 2, 4, 1};
  const auto e = exact_indicators(cm, 4, 10);
  EXPECT_EQ(e.precision, Rational(3, 5));
  EXPECT_EQ(e.recall, Rational(3, 4));
  EXPECT_EQ(e.f1, Rational(2, 3));
  ASSERT_TRUE(e.er.has_value());
  EXPECT_EQ(*e.er, Rational(1, 3));
}

TEST(Indicators, WorkedExampleSelection) {
  // Worked example, k = 25%: B selected; suppose B and D are the important ones.
  LabelSet labels({{"A", false}, {"B", true}, {"C", false}, {"D", true}});
  const auto r = evaluate_threshold({"A", "B", "C", "D"}, {0.19, 0.36, 0.19, 0.26}, labels, 25);
  EXPECT_EQ(r.cm, (ConfusionMatrix{1, 0, 2, 1}));
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.er, 0.5);  // (4*1 - 1*2) / (4*1)
}

TEST(Indicators, UndefinedAndDegenerateCases) {
  // No hits: ER is undefined, everything else zero.
  auto e = exact_indicators({0, 2, 6, 2}, 2, 10);
  EXPECT_FALSE(e.er.has_value());
  EXPECT_EQ(e.precision, Rational(0));
  EXPECT_EQ(e.f1, Rational(0));
  // No important modules at all: recall is 0 rather than undefined.
  e = exact_indicators({0, 1, 3, 0}, 0, 4);
  EXPECT_EQ(e.recall, Rational(0));
  const auto r = indicators({0, 1, 3, 0}, labels_with(4, 0));
  EXPECT_TRUE(std::isnan(r.er));
  // Perfect prediction of every important module.
  e = exact_indicators({2, 0, 8, 0}, 2, 10);
  EXPECT_EQ(e.precision, Rational(1));
  EXPECT_EQ(e.recall, Rational(1));
  EXPECT_EQ(e.f1, Rational(1));
  EXPECT_EQ(*e.er, Rational(4, 5));
  // Inconsistent inputs are rejected.
  EXPECT_THROW(exact_indicators({1, 0, 0, 0}, 1, 5), Error);
  EXPECT_THROW(exact_indicators({1, 0, 4, 0}, 2, 5), Error);
}

TEST(Indicators, RationalArithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -2), Rational(-1, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_THROW(Rational(1, 0), NumericError);
  EXPECT_THROW(Rational(1) / Rational(0), NumericError);
}

TEST(Properties, IndicatorsMatchDefinitionsOverRandomMatrices) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t n = 1 + rng() % 60;
    const std::uint64_t k = rng() % (n + 1);
    const std::uint64_t x = rng() % (n + 1);
    const std::uint64_t y_lo = x + k > n ? x + k - n : 0;
    const std::uint64_t y_hi = std::min(x, k);
    const std::uint64_t y = y_lo + rng() % (y_hi - y_lo + 1);
    const ConfusionMatrix cm{y, x - y, n - x - k + y, k - y};
    const auto e = exact_indicators(cm, k, n);
    const Rational precision = x ? Rational(y, x) : Rational(0);
    const Rational recall = k ? Rational(y, k) : Rational(0);
    ASSERT_EQ(e.precision, precision);
    ASSERT_EQ(e.recall, recall);
    if (y == 0) {
      ASSERT_FALSE(e.er.has_value());
      ASSERT_EQ(e.f1, Rational(0));
      continue;
    }
    // Textbook forms evaluated with exact arithmetic.
    ASSERT_EQ(e.f1, Rational(2) * precision * recall / (precision + recall));
    const Rational random_precision(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
    ASSERT_EQ(*e.er, (precision - random_precision) / precision);
    ASSERT_LE(e.precision.to_double(), 1.0);
    ASSERT_LE(e.f1.to_double(), 1.0);
    ASSERT_LT(e.er->to_double(), 1.0);
  }
}

TEST(Bootstrap, BoundedDrawStaysInRange) {
  std::mt19937_64 rng(1);
  for (std::uint64_t n : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 1}) {
    for (int i = 0; i < 200; ++i) ASSERT_LT(bounded_draw(rng, n), n);
  }
  EXPECT_THROW(bounded_draw(rng, 0), Error);
}

TEST(Bootstrap, SplitsAreDeterministicAndDisjoint) {
  for (std::uint64_t run = 0; run < 50; ++run) {
    const auto a = bootstrap_split(40, run, 50);
    const auto b = bootstrap_split(40, run, 50);
    EXPECT_EQ(a.train, b.train);
    EXPECT_EQ(a.test, b.test);
    ASSERT_EQ(a.train.size(), 40u);
    ASSERT_FALSE(a.test.empty());
    for (auto t : a.test) {
      ASSERT_EQ(std::count(a.train.begin(), a.train.end(), t), 0);
    }
    std::set<std::size_t> covered(a.train.begin(), a.train.end());
    covered.insert(a.test.begin(), a.test.end());
    ASSERT_EQ(covered.size(), 40u);
  }
  EXPECT_THROW(bootstrap_split(1, 0, 10), Error);
  EXPECT_THROW(bootstrap_split(10, 0, 0), Error);
}

TEST(Bootstrap, EmptyTestSetIsRedrawnWithShiftedSeed) {
  // With two modules, a draw of both indices leaves nothing out; find such a run.
  bool saw_redraw = false;
  for (std::uint64_t run = 0; run < 64; ++run) {
    const auto s = bootstrap_split(2, run, 64);
    ASSERT_FALSE(s.test.empty());
    if (s.seed != run) {
      saw_redraw = true;
      EXPECT_EQ((s.seed - run) % 64, 0u);
    }
  }
  EXPECT_TRUE(saw_redraw);
}

TEST(Bootstrap, TestFractionNearOutOfBagRate) {
  // Each module is left out with probability (1 - 1/n)^n, about 0.368.
  double total = 0;
  const std::uint64_t runs = 400;
  for (std::uint64_t run = 0; run < runs; ++run) {
    total += static_cast<double>(bootstrap_split(500, run, runs).test.size()) / 500.0;
  }
  const double out_of_bag = total / static_cast<double>(runs);
  EXPECT_NEAR(1.0 - out_of_bag, 0.632, 0.02);
}

TEST(Bootstrap, OracleScoresGivePerfectRecallAtFullThreshold) {
  const auto labels = labels_with(30, 6);
  // A provider that knows the labels ranks every important module first.
  ScoreProvider oracle = [&](const std::vector<std::string>& modules) {
    std::vector<double> out;
    for (const auto& m : modules) out.push_back(labels.is_important(m) ? 1.0 : 0.0);
    return out;
  };
  BootstrapOptions options;
  options.thresholds = {5, 20, 100};
  options.runs = 40;
  const auto results = run_bootstrap(labels, oracle, options);
  ASSERT_EQ(results.size(), 3u);
  for (const auto& run : results[2].per_run) {
    EXPECT_DOUBLE_EQ(run.indicators.recall, run.test_important ? 1.0 : 0.0);
  }
  for (const auto& run : results[0].per_run) {
    if (run.test_important) {
      EXPECT_DOUBLE_EQ(run.indicators.precision, 1.0);
    }
  }
}

TEST(Bootstrap, MeansRecomputeFromPerRunRecords) {
  std::mt19937_64 rng(8);
  const auto g = testing::random_graph(rng, 50, 0.08);
  const auto labels = testing::hub_labels(g, 8);
  BootstrapOptions options;
  options.thresholds = default_thresholds();
  options.runs = 30;
  const auto results = run_bootstrap(labels, restrict_scores(solve(g)), options);
  ASSERT_EQ(results.size(), options.thresholds.size());
  for (const auto& t : results) {
    ASSERT_EQ(t.per_run.size(), 30u);
    double p = 0, r = 0, f = 0, e = 0;
    std::size_t er_runs = 0;
    for (const auto& run : t.per_run) {
      p += run.indicators.precision;
      r += run.indicators.recall;
      f += run.indicators.f1;
      if (!std::isnan(run.indicators.er)) {
        e += run.indicators.er;
        ++er_runs;
      }
    }
    EXPECT_NEAR(t.mean.precision, p / 30, 1e-12);
    EXPECT_NEAR(t.mean.recall, r / 30, 1e-12);
    EXPECT_NEAR(t.mean.f1, f / 30, 1e-12);
    EXPECT_EQ(t.er_excluded_runs, 30 - er_runs);
    if (er_runs) {
      EXPECT_NEAR(t.mean.er, e / static_cast<double>(er_runs), 1e-12);
    }
  }
}

TEST(Bootstrap, DeterministicAcrossRepeatsAndThreadCounts) {
  std::mt19937_64 rng(21);
  const auto g = testing::random_graph(rng, 80, 0.05);
  const auto labels = testing::hub_labels(g, 10);
  BootstrapOptions options;
  options.thresholds = {10, 25};
  options.runs = 25;
  const auto provider = restrict_scores(solve(g));
  const auto a = run_bootstrap(labels, provider, options);
  options.threads = 4;
  const auto b = run_bootstrap(labels, provider, options);
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t r = 0; r < a[t].per_run.size(); ++r) {
      const auto& x = a[t].per_run[r];
      const auto& y = b[t].per_run[r];
      ASSERT_EQ(x.seed, y.seed);
      ASSERT_EQ(x.indicators.cm, y.indicators.cm);
      ASSERT_EQ(x.indicators.f1, y.indicators.f1);
    }
    EXPECT_EQ(a[t].mean.f1, b[t].mean.f1);
  }
}

TEST(Bootstrap, SingleRunAndValidation) {
  const auto labels = labels_with(10, 3);
  ScoreProvider flat = [](const std::vector<std::string>& m) {
    return std::vector<double>(m.size(), 0.5);
  };
  BootstrapOptions options;
  options.thresholds = {50};
  options.runs = 1;
  const auto results = run_bootstrap(labels, flat, options);
  ASSERT_EQ(results[0].per_run.size(), 1u);
  EXPECT_EQ(results[0].mean.precision, results[0].per_run[0].indicators.precision);

  options.runs = 0;
  EXPECT_THROW(run_bootstrap(labels, flat, options), Error);
  options.runs = 5;
  options.thresholds = {};
  EXPECT_THROW(run_bootstrap(labels, flat, options), Error);
  options.thresholds = {150};
  EXPECT_THROW(run_bootstrap(labels, flat, options), Error);
  options.thresholds = {10};
  EXPECT_THROW(run_bootstrap(labels_with(10, 0), flat, options), Error);
  ScoreProvider broken = [](const std::vector<std::string>&) { return std::vector<double>{}; };
  EXPECT_THROW(run_bootstrap(labels, broken, options), Error);
}

}  // namespace
}  // namespace docrank
