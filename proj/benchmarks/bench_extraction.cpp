#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "docrank/java_extractor.hpp"
#include "docrank/java_parser.hpp"

namespace {

// One compilation unit per class; each class touches the next few classes
// through fields, signatures and calls.
std::map<std::string, std::string> synthetic_sources(std::size_t classes) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < classes; ++i) {
    std::string text = "package bench;\n\npublic class C" + std::to_string(i) + " {\n";
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto other = "C" + std::to_string((i + k * 7) % classes);
      const auto n = std::to_string(k);
      text += "  private " + other + " f" + n + ";\n";
      text += "  public " + other + " m" + n + "(" + other + " p, int x) {\n";
      text += "    if (x > 0) { p.run(); }\n    for (int j = 0; j < x; ++j) { f" + n + ".run(); }\n";
      text += "    return p;\n  }\n";
    }
    text += "  public void run() {}\n}\n";
    out.emplace("bench/C" + std::to_string(i) + ".java", std::move(text));
  }
  return out;
}

void BM_ParseUnit(benchmark::State& state) {
  const auto sources = synthetic_sources(1);
  const auto& [path, text] = *sources.begin();
  std::size_t bytes = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(docrank::java::parse_unit(text, path));
    bytes += text.size();
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_ParseUnit);

void BM_ExtractSources(benchmark::State& state) {
  const auto sources = synthetic_sources(static_cast<std::size_t>(state.range(0)));
  docrank::ExtractionOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(docrank::extract_sources(sources, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExtractSources)->ArgsProduct({{100, 1000}, {1, 4}})->Unit(benchmark::kMillisecond);

}  // namespace
