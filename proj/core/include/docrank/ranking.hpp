#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "docrank/pagerank.hpp"

namespace docrank {

struct RankedEntry {
  std::string module;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
};

// Descending score; equal scores ordered by ascending module name.
using RankedList = std::vector<RankedEntry>;

struct ThresholdSelection {
  double k_percent = 0.0;
  std::size_t cutoff_count = 0;
  std::set<std::string> selected;
};

RankedList rank(const ScoreVector& scores);
RankedList rank(const std::vector<std::string>& names, const std::vector<double>& scores);

// max(1, round_half_up(n * k / 100)) for n >= 1; 0 for n = 0.
std::size_t cutoff_count(std::size_t n, double k_percent);

// Top cutoff_count entries; k must lie in (0, 100].
ThresholdSelection select_top(const RankedList& ranked, double k_percent);

// 5, 10, ..., 50.
std::vector<double> default_thresholds();

}  // namespace docrank
