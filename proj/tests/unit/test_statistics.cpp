#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "docrank/errors.hpp"
#include "docrank/statistics.hpp"

namespace docrank {
namespace {

// Brute-force oracle: enumerate every sign assignment of the midranks.
double brute_force_wilcoxon(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) d.push_back(a[i] - b[i]);
  }
  if (d.empty()) return 1.0;
  const std::size_t m = d.size();
  std::vector<double> ranks(m);
  for (std::size_t i = 0; i < m; ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::abs(d[j]) < std::abs(d[i])) ++less;
      if (std::abs(d[j]) == std::abs(d[i])) ++equal;
    }
    ranks[i] = less + (equal + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (d[i] > 0) observed += ranks[i];
  }
  double lower = 0, upper = 0;
  const std::size_t assignments = std::size_t{1} << m;
  for (std::size_t mask = 0; mask < assignments; ++mask) {
    double w = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) w += ranks[i];
    }
    if (w <= observed + 1e-9) ++lower;
    if (w >= observed - 1e-9) ++upper;
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / static_cast<double>(assignments));
}

double brute_force_cliff(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0;
  for (double x : a) {
    for (double y : b) sum += (x > y) - (x < y);
  }
  return sum / static_cast<double>(a.size() * b.size());
}

TEST(Wilcoxon, IdenticalSamplesGiveOne) {
  const std::vector<double> a = {0.1, 0.4, 0.4, 0.9};
  const auto r = wilcoxon_signed_rank(a, a);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.nonzero, 0u);
}

TEST(Wilcoxon, CompleteDominationOfTenPairs) {
  std::vector<double> a, b;
  for (int i = 0; i < 10; ++i) {
    a.push_back(1.0 + i);
    b.push_back(0.5 * i);
  }
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.p_value, 2.0 / 1024.0);
  EXPECT_DOUBLE_EQ(r.w_plus, 55.0);
  EXPECT_DOUBLE_EQ(wilcoxon_signed_rank(b, a).p_value, 2.0 / 1024.0);
}

TEST(Wilcoxon, AgreesWithBruteForceIncludingTies) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 14;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Quarter steps keep ties frequent and exactly representable.
      a[i] = small(rng) * 0.25;
      b[i] = small(rng) * 0.25;
    }
    const auto r = wilcoxon_signed_rank(a, b);
    ASSERT_NEAR(r.p_value, brute_force_wilcoxon(a, b), 1e-12) << "trial " << trial;
    ASSERT_GE(r.p_value, 0.0);
    ASSERT_LE(r.p_value, 1.0);
  }
}

TEST(Wilcoxon, NormalApproximationAboveTheExactLimit) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> a, b;
  for (int i = 0; i < 40; ++i) {
    a.push_back(noise(rng) + 0.4);
    b.push_back(noise(rng));
  }
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_FALSE(r.exact);
  // Hand form: z = (W+ - m(m+1)/4) / sqrt(m(m+1)(2m+1)/24), no ties here.
  const double mean = 40.0 * 41.0 / 4.0;
  const double sd = std::sqrt(40.0 * 41.0 * 81.0 / 24.0);
  const double z = (r.w_plus - mean) / sd;
  EXPECT_NEAR(r.p_value, std::erfc(std::abs(z) / std::sqrt(2.0)), 1e-12);

  // Just past the limit the approximation stays close to the exact tail.
  std::vector<double> c, d;
  for (int i = 0; i < 26; ++i) {
    c.push_back(i % 3 == 0 ? -1.0 - i : 1.0 + i);
    d.push_back(0.0);
  }
  const auto approx = wilcoxon_signed_rank(c, d);
  EXPECT_FALSE(approx.exact);
  // Exact tail for ranks 1..26 by counting subsets with a given sum.
  std::vector<double> counts(352, 0.0);
  counts[0] = 1;
  for (int r = 1; r <= 26; ++r) {
    for (int s = 351; s >= r; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
  }
  double lower = 0;
  for (int s = 0; s <= static_cast<int>(approx.w_plus); ++s) lower += counts[static_cast<std::size_t>(s)];
  double upper = 0;
  for (int s = static_cast<int>(approx.w_plus); s <= 351; ++s) upper += counts[static_cast<std::size_t>(s)];
  const double exact = std::min(1.0, 2.0 * std::min(lower, upper) / std::ldexp(1.0, 26));
  EXPECT_NEAR(approx.p_value, exact, 0.01);
}

TEST(Wilcoxon, RejectsBadInput) {
  EXPECT_THROW(wilcoxon_signed_rank({1.0}, {1.0, 2.0}), Error);
  EXPECT_THROW(wilcoxon_signed_rank({std::nan("")}, {1.0}), Error);
}

TEST(Cliff, WorkedValues) {
  EXPECT_DOUBLE_EQ(cliffs_delta({1, 2}, {2, 3}).delta, -0.75);
  EXPECT_DOUBLE_EQ(cliffs_delta({5, 6, 7}, {1, 2}).delta, 1.0);
  EXPECT_DOUBLE_EQ(cliffs_delta({1, 1}, {1, 1, 1}).delta, 0.0);
  EXPECT_EQ(cliffs_delta({1, 2}, {2, 3}).magnitude, EffectMagnitude::Large);
}

TEST(Cliff, MagnitudeBands) {
  EXPECT_EQ(classify_effect(0.0), EffectMagnitude::Negligible);
  EXPECT_EQ(classify_effect(0.146), EffectMagnitude::Negligible);
  EXPECT_EQ(classify_effect(0.147), EffectMagnitude::Small);
  EXPECT_EQ(classify_effect(-0.32), EffectMagnitude::Small);
  EXPECT_EQ(classify_effect(0.33), EffectMagnitude::Moderate);
  EXPECT_EQ(classify_effect(0.473), EffectMagnitude::Moderate);
  EXPECT_EQ(classify_effect(-0.474), EffectMagnitude::Large);
  EXPECT_EQ(to_string(EffectMagnitude::Moderate), "moderate");
}

TEST(Cliff, AgreesWithQuadraticDefinitionAndIsAntisymmetric) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> v(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> a(1 + trial % 17), b(1 + (trial * 5) % 13);
    for (auto& x : a) x = v(rng);
    for (auto& y : b) y = v(rng);
    const double delta = cliffs_delta(a, b).delta;
    ASSERT_NEAR(delta, brute_force_cliff(a, b), 1e-12);
    ASSERT_NEAR(cliffs_delta(b, a).delta, -delta, 1e-12);
    ASSERT_GE(delta, -1.0);
    ASSERT_LE(delta, 1.0);
  }
  EXPECT_THROW(cliffs_delta({}, {1.0}), Error);
}

TEST(BenjaminiHochberg, WorkedExample) {
  const auto adjusted = benjamini_hochberg({0.01, 0.02, 0.04});
  ASSERT_EQ(adjusted.size(), 3u);
  EXPECT_NEAR(adjusted[0], 0.03, 1e-15);
  EXPECT_NEAR(adjusted[1], 0.03, 1e-15);
  EXPECT_NEAR(adjusted[2], 0.04, 1e-15);
}

TEST(BenjaminiHochberg, KeepsInputOrderAndCapsAtOne) {
  const auto adjusted = benjamini_hochberg({0.04, 0.01, 0.9, 0.02});
  EXPECT_NEAR(adjusted[1], 0.04, 1e-15);
  EXPECT_NEAR(adjusted[3], 0.04, 1e-15);
  EXPECT_NEAR(adjusted[0], 0.16 / 3.0, 1e-15);
  EXPECT_NEAR(adjusted[2], 0.9, 1e-15);
  EXPECT_EQ(benjamini_hochberg({1.0, 1.0})[0], 1.0);
  EXPECT_TRUE(benjamini_hochberg({}).empty());
  EXPECT_THROW(benjamini_hochberg({1.5}), Error);
  EXPECT_THROW(benjamini_hochberg({std::nan("")}), Error);
}

TEST(BenjaminiHochberg, AdjustedValuesDominateRawAndPreserveOrder) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(1 + trial % 40);
    for (auto& x : p) x = u(rng) * u(rng);
    const auto adj = benjamini_hochberg(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_GE(adj[i], p[i] - 1e-15);
      ASSERT_LE(adj[i], 1.0);
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[i] <= p[j]) {
          ASSERT_LE(adj[i], adj[j] + 1e-15);
        }
      }
    }
  }
}

}  // namespace
}  // namespace docrank
