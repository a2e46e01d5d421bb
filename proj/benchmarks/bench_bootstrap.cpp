#include <benchmark/benchmark.h>

#include <string>

#include "docrank/bootstrap.hpp"
#include "docrank/statistics.hpp"

namespace {

docrank::LabelSet labels(std::size_t n) {
  docrank::LabelSet out;
  for (std::size_t i = 0; i < n; ++i) out.set("M" + std::to_string(i), i % 10 == 0);
  return out;
}

docrank::ScoreVector scores(std::size_t n) {
  docrank::ScoreVector s;
  for (std::size_t i = 0; i < n; ++i) {
    s.names.push_back("M" + std::to_string(i));
    s.scores.push_back(1.0 / static_cast<double>(1 + (i * 7919) % n));
  }
  return s;
}

void BM_Bootstrap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto l = labels(n);
  const auto provider = docrank::restrict_scores(scores(n));
  docrank::BootstrapOptions options;
  options.thresholds = docrank::default_thresholds();
  options.runs = 100;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(docrank::run_bootstrap(l, provider, options));
}
BENCHMARK(BM_Bootstrap)->ArgsProduct({{500, 5000}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_WilcoxonExact(benchmark::State& state) {
  std::vector<double> a, b;
  for (int i = 0; i < 25; ++i) {
    a.push_back(i * 0.37);
    b.push_back((i % 5) * 0.9);
  }
  for (auto _ : state) benchmark::DoNotOptimize(docrank::wilcoxon_signed_rank(a, b));
}
BENCHMARK(BM_WilcoxonExact);

void BM_CliffsDelta(benchmark::State& state) {
  std::vector<double> a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a.push_back((i * 31) % 97);
    b.push_back((i * 17) % 89);
  }
  for (auto _ : state) benchmark::DoNotOptimize(docrank::cliffs_delta(a, b));
}
BENCHMARK(BM_CliffsDelta)->Arg(100)->Arg(10000);

}  // namespace
