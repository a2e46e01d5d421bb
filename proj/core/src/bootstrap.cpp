#include "docrank/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "compensated_sum.hpp"
#include "docrank/errors.hpp"

namespace docrank {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw Error("bounded draw over an empty range");
  // Accept x < 2^64 - (2^64 mod n), the largest multiple of n that fits.
  const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (excess == 0 || x < 0 - excess) return x % n;
  }
}

BootstrapSplit bootstrap_split(std::size_t n_total, std::uint64_t run_index, std::uint64_t runs) {
  if (n_total < 2) throw Error("bootstrap needs at least 2 labeled modules");
  if (runs == 0) throw Error("bootstrap needs at least one run");
  BootstrapSplit split;
  split.seed = run_index;
  while (true) {
    std::mt19937_64 rng(split.seed);
    std::vector<bool> drawn(n_total, false);
    split.train.clear();
    split.train.reserve(n_total);
    for (std::size_t i = 0; i < n_total; ++i) {
      const auto index = static_cast<std::size_t>(bounded_draw(rng, n_total));
      split.train.push_back(index);
      drawn[index] = true;
    }
    split.test.clear();
    for (std::size_t i = 0; i < n_total; ++i) {
      if (!drawn[i]) split.test.push_back(i);
    }
    if (!split.test.empty()) return split;
    split.seed += runs;
  }
}

ScoreProvider restrict_scores(ScoreVector scores) {
  return [scores = std::move(scores)](const std::vector<std::string>& modules) {
    std::vector<double> out;
    out.reserve(modules.size());
    for (const auto& m : modules) out.push_back(scores.score(m));
    return out;
  };
}

MeanIndicators mean_of(const std::vector<RunRecord>& runs, std::size_t* er_excluded) {
  detail::CompensatedSum p, r, f, e;
  std::size_t er_count = 0;
  for (const auto& run : runs) {
    p += run.indicators.precision;
    r += run.indicators.recall;
    f += run.indicators.f1;
    if (!std::isnan(run.indicators.er)) {
      e += run.indicators.er;
      ++er_count;
    }
  }
  MeanIndicators mean;
  const double count = static_cast<double>(runs.size());
  if (!runs.empty()) {
    mean.precision = p.value() / count;
    mean.recall = r.value() / count;
    mean.f1 = f.value() / count;
  }
  mean.er = er_count ? e.value() / static_cast<double>(er_count)
                     : std::numeric_limits<double>::quiet_NaN();
  if (er_excluded) *er_excluded = runs.size() - er_count;
  return mean;
}

std::vector<ThresholdBootstrap> run_bootstrap(const LabelSet& labels, const ScoreProvider& scores,
                                              const BootstrapOptions& options) {
  if (options.thresholds.empty()) throw Error("bootstrap needs at least one threshold");
  if (options.runs == 0) throw Error("bootstrap needs at least one run");
  for (double k : options.thresholds) cutoff_count(1, k);  // validates the range
  const auto modules = labels.modules();
  if (modules.size() < 2) throw Error("bootstrap needs at least 2 labeled modules");
  if (labels.k_true() == 0) throw Error("bootstrap needs at least one important module");

  const std::size_t runs = options.runs;
  // per_run[run][threshold]
  std::vector<std::vector<RunRecord>> per_run(runs);
  std::vector<std::exception_ptr> failures(runs);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t run = next++; run < runs; run = next++) {
      try {
        const auto split = bootstrap_split(modules.size(), run, runs);
        std::vector<std::string> test;
        test.reserve(split.test.size());
        for (auto i : split.test) test.push_back(modules[i]);
        const auto test_scores = scores(test);
        if (test_scores.size() != test.size()) throw Error("score provider returned the wrong size");
        const auto test_labels = labels.restricted(test);
        for (double k : options.thresholds) {
          RunRecord rec;
          rec.run_index = run;
          rec.seed = split.seed;
          rec.test_size = test.size();
          rec.test_important = test_labels.k_true();
          rec.indicators = evaluate_threshold(test, test_scores, test_labels, k);
          rec.indicators.approach = options.approach;
          per_run[run].push_back(std::move(rec));
        }
      } catch (...) {
        failures[run] = std::current_exception();
      }
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(runs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<ThresholdBootstrap> out;
  for (std::size_t t = 0; t < options.thresholds.size(); ++t) {
    ThresholdBootstrap summary;
    summary.k_percent = options.thresholds[t];
    for (std::size_t run = 0; run < runs; ++run) summary.per_run.push_back(per_run[run][t]);
    summary.mean = mean_of(summary.per_run, &summary.er_excluded_runs);
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace docrank
