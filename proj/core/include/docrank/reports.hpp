#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "docrank/bootstrap.hpp"
#include "docrank/evaluation.hpp"
#include "docrank/run_config.hpp"
#include "docrank/statistics.hpp"

namespace docrank {

inline constexpr std::string_view kMetricsFormat = "docrank-metrics v1";
inline constexpr std::string_view kComparisonFormat = "docrank-comparison v1";

// Raised when two metrics files cannot be paired run by run.
class ProvenanceError : public Error {
 public:
  using Error::Error;
};

struct MetricsReport {
  std::string approach;
  RunConfig config;
  std::string labels_digest;  // FNV-1a of the canonical label listing
  std::size_t n_labeled = 0;
  std::vector<IndicatorRecord> single_shot;    // one per threshold, full labeled set
  std::vector<ThresholdBootstrap> bootstrap;   // empty when runs = 0
};

// Canonical `module=0|1` lines of the labels, the basis of labels_digest.
std::string labels_digest(const LabelSet& labels);

// Deterministic JSON; undefined ER values are written as null.
std::string format_metrics_json(const MetricsReport& report);

inline constexpr std::string_view kMetricNames[] = {"precision", "recall", "f1", "er"};

// The parts of a metrics file that pairing and comparison need.
struct LoadedMetrics {
  std::string approach;
  std::string variant;
  std::string config_hash;
  std::string rng_name;
  std::string rng_seed_rule;
  std::string rng_bounded_draw;
  std::string labels_digest;
  std::uint64_t n_labeled = 0;
  std::uint64_t runs = 0;
  struct Threshold {
    double k_percent = 0.0;
    std::vector<std::uint64_t> run_indices;
    std::vector<double> values[4];  // per run, indexed like kMetricNames; NaN for null
  };
  std::vector<Threshold> thresholds;
};

// Throws ParseError on malformed input.
LoadedMetrics parse_metrics_json(std::string_view text, const std::string& source = {});

struct ComparisonCell {
  std::string metric;
  double k_percent = 0.0;
  std::size_t pairs = 0;     // runs with both values defined
  double p_raw = 1.0;
  double p_adjusted = 1.0;
  double delta = 0.0;
  EffectMagnitude magnitude = EffectMagnitude::Negligible;
  std::string direction;     // "a", "b" or "none"
};

// Per metric x threshold: Wilcoxon p (BH-adjusted over all cells), Cliff's
// delta of a vs. b. Runs where either side is undefined are dropped pairwise.
// Throws ProvenanceError unless thresholds, runs, RNG and labels agree.
std::vector<ComparisonCell> compare_metrics(const LoadedMetrics& a, const LoadedMetrics& b);

std::string format_comparison_json(const LoadedMetrics& a, const LoadedMetrics& b,
                                   const std::vector<ComparisonCell>& cells);

}  // namespace docrank
