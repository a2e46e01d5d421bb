#include "docrank/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "docrank/errors.hpp"

namespace docrank {

namespace {

// Midranks of |d|, doubled so ties stay integral.
std::vector<std::int64_t> doubled_midranks(const std::vector<double>& magnitudes,
                                           double* tie_term) {
  const std::size_t m = magnitudes.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return magnitudes[x] < magnitudes[y]; });
  std::vector<std::int64_t> ranks(m, 0);
  double ties = 0.0;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j + 1 < m && magnitudes[order[j + 1]] == magnitudes[order[i]]) ++j;
    // Positions i..j (0-based) share rank ((i+1) + (j+1)) / 2.
    const auto doubled = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = doubled;
    const double count = static_cast<double>(j - i + 1);
    ties += count * count * count - count;
    i = j + 1;
  }
  if (tie_term) *tie_term = ties;
  return ranks;
}

double normal_upper_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("paired samples differ in length");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (std::isnan(d)) throw Error("paired samples contain NaN");
    if (d != 0.0) diffs.push_back(d);
  }

  WilcoxonResult result;
  result.nonzero = diffs.size();
  if (diffs.empty()) return result;

  std::vector<double> magnitudes;
  magnitudes.reserve(diffs.size());
  for (double d : diffs) magnitudes.push_back(std::abs(d));
  double tie_term = 0.0;
  const auto ranks = doubled_midranks(magnitudes, &tie_term);

  std::int64_t w_plus_doubled = 0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0) w_plus_doubled += ranks[i];
  }
  result.w_plus = static_cast<double>(w_plus_doubled) / 2.0;
  const auto m = static_cast<double>(diffs.size());

  if (diffs.size() <= kWilcoxonExactLimit) {
    // counts[s] = number of sign assignments whose doubled positive-rank sum is s.
    const auto total = static_cast<std::size_t>(std::accumulate(ranks.begin(), ranks.end(), 0LL));
    std::vector<double> counts(total + 1, 0.0);
    counts[0] = 1.0;
    std::size_t reach = 0;
    for (auto r : ranks) {
      const auto step = static_cast<std::size_t>(r);
      for (std::size_t s = reach + 1; s-- > 0;) {
        if (counts[s] != 0.0) counts[s + step] += counts[s];
      }
      reach += step;
    }
    double lower = 0.0;
    double upper = 0.0;
    const auto observed = static_cast<std::size_t>(w_plus_doubled);
    for (std::size_t s = 0; s <= total; ++s) {
      if (s <= observed) lower += counts[s];
      if (s >= observed) upper += counts[s];
    }
    const double assignments = std::ldexp(1.0, static_cast<int>(diffs.size()));
    result.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / assignments);
    result.exact = true;
    return result;
  }

  const double mean = m * (m + 1.0) / 4.0;
  const double variance = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_term / 48.0;
  result.exact = false;
  if (!(variance > 0.0)) return result;
  const double z = (result.w_plus - mean) / std::sqrt(variance);
  result.p_value = std::min(1.0, normal_upper_two_sided(z));
  return result;
}

std::string_view to_string(EffectMagnitude magnitude) {
  switch (magnitude) {
    case EffectMagnitude::Negligible: return "negligible";
    case EffectMagnitude::Small: return "small";
    case EffectMagnitude::Moderate: return "moderate";
    case EffectMagnitude::Large: return "large";
  }
  return "negligible";
}

EffectMagnitude classify_effect(double delta) {
  const double d = std::abs(delta);
  if (d < 0.147) return EffectMagnitude::Negligible;
  if (d < 0.33) return EffectMagnitude::Small;
  if (d < 0.474) return EffectMagnitude::Moderate;
  return EffectMagnitude::Large;
}

CliffsDelta cliffs_delta(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw Error("Cliff's delta needs two non-empty samples");
  if (std::any_of(b.begin(), b.end(), [](double y) { return std::isnan(y); })) {
    throw Error("Cliff's delta sample contains NaN");
  }
  std::vector<double> sorted_b = b;
  std::sort(sorted_b.begin(), sorted_b.end());
  std::int64_t dominance = 0;
  for (double x : a) {
    if (std::isnan(x)) throw Error("Cliff's delta sample contains NaN");
    const auto below = std::lower_bound(sorted_b.begin(), sorted_b.end(), x) - sorted_b.begin();
    const auto above = sorted_b.end() - std::upper_bound(sorted_b.begin(), sorted_b.end(), x);
    dominance += below - above;
  }
  CliffsDelta out;
  out.delta = static_cast<double>(dominance) /
              (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  out.magnitude = classify_effect(out.delta);
  return out;
}

std::vector<double> benjamini_hochberg(const std::vector<double>& p_values) {
  const std::size_t m = p_values.size();
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p-values must lie in [0, 1]");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });
  std::vector<double> adjusted(m, 1.0);
  double running = 1.0;
  for (std::size_t i = m; i-- > 0;) {
    const double scaled =
        static_cast<double>(m) * p_values[order[i]] / static_cast<double>(i + 1);
    running = std::min(running, scaled);
    adjusted[order[i]] = std::min(1.0, running);
  }
  return adjusted;
}

}  // namespace docrank
