#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "docrank/evaluation.hpp"
#include "docrank/pagerank.hpp"
#include "docrank/ranking.hpp"

namespace docrank {

// Identifies the resampling generator in output files.
inline constexpr std::string_view kRngName = "mt19937_64";
inline constexpr std::string_view kRngSeedRule =
    "seed = run_index; empty test set redrawn with seed + runs";
inline constexpr std::string_view kRngBoundedDraw = "rejection: x < 2^64 - (2^64 mod n), index = x mod n";

// Uniform index in [0, n) from the generator's raw 64-bit outputs, so the
// sequence is identical on every standard library.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n);

struct BootstrapSplit {
  std::uint64_t seed = 0;            // seed that produced the split
  std::vector<std::size_t> train;    // n draws with replacement, in draw order
  std::vector<std::size_t> test;     // never-drawn indices, ascending
};

// Deterministic in (n_total, run_index, runs); requires n_total >= 2.
BootstrapSplit bootstrap_split(std::size_t n_total, std::uint64_t run_index, std::uint64_t runs);

// Scores for the given test modules (sorted names), parallel to the input.
using ScoreProvider = std::function<std::vector<double>(const std::vector<std::string>&)>;

// Looks the modules up in precomputed scores.
ScoreProvider restrict_scores(ScoreVector scores);

struct RunRecord {
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  std::size_t test_size = 0;
  std::size_t test_important = 0;
  IndicatorRecord indicators;
};

struct MeanIndicators {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double er = 0.0;  // over runs with a defined ER; NaN if there are none
};

struct ThresholdBootstrap {
  double k_percent = 0.0;
  MeanIndicators mean;
  std::size_t er_excluded_runs = 0;
  std::vector<RunRecord> per_run;
};

struct BootstrapOptions {
  std::vector<double> thresholds;
  std::uint64_t runs = 100;
  unsigned threads = 1;  // results are identical for any value
  std::string approach;
};

// For each run: draw the split over the sorted labeled modules, score the
// test modules, rank them, select top-k% and evaluate against test labels.
std::vector<ThresholdBootstrap> run_bootstrap(const LabelSet& labels, const ScoreProvider& scores,
                                              const BootstrapOptions& options);

MeanIndicators mean_of(const std::vector<RunRecord>& runs, std::size_t* er_excluded = nullptr);

}  // namespace docrank
