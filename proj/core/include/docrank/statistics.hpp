#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace docrank {

struct WilcoxonResult {
  double p_value = 1.0;       // two-sided
  double w_plus = 0.0;        // sum of ranks of positive differences a - b
  std::size_t nonzero = 0;    // pairs left after dropping zero differences
  bool exact = true;          // exact distribution vs. normal approximation
};

// Largest number of nonzero pairs handled by the exact distribution.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

// Paired two-sided signed-rank test. Zero differences are dropped, ties get
// midranks. Exact (tie-aware) null distribution up to kWilcoxonExactLimit
// nonzero pairs, otherwise the tie-corrected normal approximation without
// continuity correction. All differences zero gives p = 1.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

enum class EffectMagnitude { Negligible, Small, Moderate, Large };

std::string_view to_string(EffectMagnitude magnitude);

// |d| < 0.147 negligible, < 0.33 small, < 0.474 moderate, otherwise large.
EffectMagnitude classify_effect(double delta);

struct CliffsDelta {
  double delta = 0.0;
  EffectMagnitude magnitude = EffectMagnitude::Negligible;
};

// (#{a_i > b_j} - #{a_i < b_j}) / (|a| |b|), in O((|a| + |b|) log |b|).
CliffsDelta cliffs_delta(const std::vector<double>& a, const std::vector<double>& b);

// Step-up FDR adjustment, returned in input order. Inputs must lie in [0, 1].
std::vector<double> benjamini_hochberg(const std::vector<double>& p_values);

}  // namespace docrank
