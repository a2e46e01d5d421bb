#include "docrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace docrank {

RankedList rank(const std::vector<std::string>& names, const std::vector<double>& scores) {
  if (names.empty()) throw Error("cannot rank an empty score vector");
  if (names.size() != scores.size()) throw Error("names and scores differ in length");

  std::vector<std::size_t> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return names[a] < names[b];
  });

  RankedList out;
  out.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.push_back({names[order[i]], scores[order[i]], i + 1});
  }
  return out;
}

RankedList rank(const ScoreVector& scores) { return rank(scores.names, scores.scores); }

std::size_t cutoff_count(std::size_t n, double k_percent) {
  if (!(k_percent > 0.0 && k_percent <= 100.0)) {
    throw Error("threshold k% must lie in (0, 100]");
  }
  if (n == 0) return 0;
  // Snap away representation noise (e.g. 20 * 7.5 / 100) before rounding half up.
  const double raw = static_cast<double>(n) * k_percent / 100.0;
  const double snapped = std::round(raw * 1e9) / 1e9;
  const auto count = static_cast<std::size_t>(std::floor(snapped + 0.5));
  return std::clamp<std::size_t>(count, 1, n);
}

ThresholdSelection select_top(const RankedList& ranked, double k_percent) {
  ThresholdSelection out;
  out.k_percent = k_percent;
  out.cutoff_count = cutoff_count(ranked.size(), k_percent);
  for (std::size_t i = 0; i < out.cutoff_count; ++i) out.selected.insert(ranked[i].module);
  return out;
}

std::vector<double> default_thresholds() {
  std::vector<double> out;
  for (int k = 5; k <= 50; k += 5) out.push_back(k);
  return out;
}

}  // namespace docrank
