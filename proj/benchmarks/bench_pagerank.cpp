#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "docrank/pagerank.hpp"

namespace {

docrank::WeightMatrix sparse_matrix(std::size_t n, std::size_t out_degree) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("M" + std::to_string(i));
  docrank::WeightMatrix m(names);
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> weight(1, 9);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < out_degree; ++e) {
      const auto j = pick(rng);
      if (j != i) m.add(i, j, weight(rng));
    }
  }
  return m;
}

void BM_Solve(benchmark::State& state) {
  const auto matrix = sparse_matrix(static_cast<std::size_t>(state.range(0)), 8);
  docrank::SolverConfig config;
  config.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(docrank::solve(matrix, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Solve)->ArgsProduct({{1000, 10000, 100000}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_SolveDirect(benchmark::State& state) {
  const auto matrix = sparse_matrix(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(docrank::solve_direct(matrix));
}
BENCHMARK(BM_SolveDirect)->Arg(8)->Arg(64);

void BM_BuildTransition(benchmark::State& state) {
  const auto matrix = sparse_matrix(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(docrank::build_transition(matrix));
}
BENCHMARK(BM_BuildTransition)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
