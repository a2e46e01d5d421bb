#include "test_support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

namespace docrank::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return DOCRANK_TEST_DATA_DIR; }
fs::path worked_example_dir() { return data_dir() / "worked_example"; }
fs::path worked_example_split_dir() { return data_dir() / "worked_example_split"; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = fs::temp_directory_path() /
                     ("docrank-" + tag + "-" + std::to_string(rd()) + "-" +
                      std::to_string(counter++));
    if (fs::create_directories(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

DependenceGraph random_graph(std::mt19937_64& rng, std::size_t m, double density,
                             std::uint64_t max_count) {
  DependenceGraph g;
  std::vector<ModuleId> nodes;
  for (std::size_t i = 0; i < m; ++i) {
    nodes.push_back({"N" + std::to_string(i), i % 3 == 2 ? ModuleKind::Interface : ModuleKind::Class});
    g.add_node(nodes.back());
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> count(0, max_count);
  std::uniform_int_distribution<std::uint64_t> bit(0, 1);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u == v || coin(rng) >= density) continue;
      DependenceCounts c{bit(rng), count(rng), count(rng), count(rng)};
      if (c.total() > 0) g.add_counts(nodes[u], nodes[v], c);
    }
  }
  return g;
}

DependenceGraph worked_graph() {
  DependenceGraph g;
  const ModuleId a{"A", ModuleKind::Class}, b{"B", ModuleKind::Class},
      c{"C", ModuleKind::Interface}, d{"D", ModuleKind::Class};
  g.add_counts(a, b, {1, 0, 2, 0});
  g.add_counts(a, c, {1, 1, 1, 0});
  g.add_counts(a, d, {0, 1, 1, 3});
  g.add_counts(b, a, {0, 0, 1, 0});
  g.add_counts(b, d, {0, 0, 1, 0});
  g.add_counts(c, b, {0, 0, 1, 0});
  g.add_counts(d, b, {0, 0, 1, 0});
  g.add_counts(d, c, {1, 0, 0, 0});
  return g;
}

DependenceGraph scale_free_graph(std::size_t n, std::size_t out_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DependenceGraph g;
  auto id = [](std::size_t i) {
    std::string name = std::to_string(i);
    return ModuleId{"M" + std::string(4 - std::min<std::size_t>(4, name.size()), '0') + name,
                    ModuleKind::Class};
  };
  std::vector<double> attractiveness;
  std::uniform_int_distribution<std::uint64_t> calls(1, 4);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_node(id(i));
    const std::size_t targets = std::min(out_degree, i);
    std::vector<std::size_t> chosen;
    while (chosen.size() < targets) {
      std::discrete_distribution<std::size_t> pick(attractiveness.begin(), attractiveness.end());
      const auto t = pick(rng);
      if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) continue;
      chosen.push_back(t);
    }
    for (auto t : chosen) {
      g.add_counts(id(i), id(t), {0, 1, 0, calls(rng)});
      attractiveness[t] += 1.0;
    }
    attractiveness.push_back(1.0);
  }
  return g;
}

LabelSet hub_labels(const DependenceGraph& graph, std::size_t hubs) {
  std::vector<std::pair<std::size_t, std::string>> degree;
  for (const auto& node : graph.nodes()) {
    degree.emplace_back(graph.in_edges(node.name).size(), node.name);
  }
  std::sort(degree.begin(), degree.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  LabelSet labels;
  for (std::size_t i = 0; i < degree.size(); ++i) labels.set(degree[i].second, i < hubs);
  return labels;
}

}  // namespace docrank::testing
