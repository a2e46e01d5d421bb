#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "docrank/errors.hpp"

namespace docrank {

enum class ModuleKind { Class, Interface };

std::string_view to_string(ModuleKind kind);
std::optional<ModuleKind> parse_module_kind(std::string_view text);

struct ModuleId {
  std::string name;  // fully qualified
  ModuleKind kind = ModuleKind::Class;

  friend bool operator==(const ModuleId&, const ModuleId&) = default;
};

enum class DependenceKind { Inheritance, Attribute, MethodSignature, MethodCall };

std::string_view to_string(DependenceKind kind);

// Per ordered pair (u, v): how often u depends on v through each of the
// four dependence kinds.
struct DependenceCounts {
  std::uint64_t ci = 0;  // inheritance, 0 or 1
  std::uint64_t ca = 0;  // attribute types
  std::uint64_t cm = 0;  // parameter / return types
  std::uint64_t mm = 0;  // method calls

  std::uint64_t total() const noexcept { return ci + ca + cm + mm; }
  std::uint64_t& operator[](DependenceKind kind) noexcept;
  std::uint64_t operator[](DependenceKind kind) const noexcept;

  friend bool operator==(const DependenceCounts&, const DependenceCounts&) = default;
};

// Per-kind multipliers applied when collapsing counts into one weight.
struct KindCoefficients {
  double ci = 1.0;
  double ca = 1.0;
  double cm = 1.0;
  double mm = 1.0;

  static constexpr KindCoefficients uniform() { return {1.0, 1.0, 1.0, 1.0}; }
  static constexpr KindCoefficients empirical() { return {3.0, 3.0, 2.0, 4.0}; }

  double apply(const DependenceCounts& counts) const noexcept {
    return ci * static_cast<double>(counts.ci) + ca * static_cast<double>(counts.ca) +
           cm * static_cast<double>(counts.cm) + mm * static_cast<double>(counts.mm);
  }
};

enum class WeightMode { Uniform, Empirical, BackRecommendation, EmpiricalPlusBack };

std::string_view to_string(WeightMode mode);
std::optional<WeightMode> parse_weight_mode(std::string_view text);

inline constexpr bool uses_empirical_coefficients(WeightMode mode) noexcept {
  return mode == WeightMode::Empirical || mode == WeightMode::EmpiricalPlusBack;
}
inline constexpr bool uses_back_recommendation(WeightMode mode) noexcept {
  return mode == WeightMode::BackRecommendation || mode == WeightMode::EmpiricalPlusBack;
}

struct WeightSettings {
  WeightMode mode = WeightMode::Uniform;
  double back_fraction = 0.5;  // 1/F, only read by the back-recommendation modes

  friend bool operator==(const WeightSettings&, const WeightSettings&) = default;
};

// Forward weight W(u,v) for a count quadruple under `mode`.
double edge_weight(const DependenceCounts& counts, WeightMode mode) noexcept;

struct WeightedNeighbor {
  std::string module;
  double weight = 0.0;

  friend bool operator==(const WeightedNeighbor&, const WeightedNeighbor&) = default;
};

class WeightMatrix;

// Directed dependence graph over modules. Edges are keyed by ordered pair and
// carry the four per-kind counts; self edges are never stored.
class DependenceGraph {
 public:
  using EdgeKey = std::pair<std::string, std::string>;
  using EdgeMap = std::map<EdgeKey, DependenceCounts>;

  DependenceGraph() = default;
  explicit DependenceGraph(WeightSettings settings) : settings_(settings) {}

  // Inserts the node, or checks the existing one has the same kind.
  void add_node(const ModuleId& module);

  // Increments the `kind` field of counts(u, v) by `count`, inserting nodes.
  void add_dependence(const ModuleId& from, const ModuleId& to, DependenceKind kind,
                      std::uint64_t count = 1);

  // Adds a whole quadruple at once (used by deserialization and merges).
  void add_counts(const ModuleId& from, const ModuleId& to, const DependenceCounts& counts);

  bool contains(std::string_view name) const;
  ModuleKind kind_of(std::string_view name) const;
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Sorted by name.
  std::vector<ModuleId> nodes() const;
  const EdgeMap& edges() const noexcept { return edges_; }

  // Zero counts when (u, v) is not an edge; throws UnknownNodeError for unknown nodes.
  DependenceCounts counts(std::string_view from, std::string_view to) const;

  // Forward weight under the graph's coefficient mode (transpose not applied).
  double edge_weight(std::string_view from, std::string_view to) const;

  std::vector<WeightedNeighbor> out_edges(std::string_view module) const;
  std::vector<WeightedNeighbor> in_edges(std::string_view module) const;

  const WeightSettings& weight_settings() const noexcept { return settings_; }
  void set_weight_settings(WeightSettings settings) { settings_ = settings; }

  // Subgraph on `keep`; edges leaving the set are dropped.
  DependenceGraph induced(const std::set<std::string>& keep) const;

  // Unions nodes and adds counts edge-wise.
  void merge(const DependenceGraph& other);

  friend bool operator==(const DependenceGraph&, const DependenceGraph&) = default;

 private:
  void require_node(std::string_view name) const;

  WeightSettings settings_;
  std::map<std::string, ModuleKind, std::less<>> nodes_;
  EdgeMap edges_;
  std::map<std::string, std::set<std::string>, std::less<>> predecessors_;
};

// Sparse non-negative weight matrix over an indexed, name-sorted node set.
class WeightMatrix {
 public:
  struct Entry {
    std::size_t index = 0;
    double weight = 0.0;
  };

  WeightMatrix() = default;
  explicit WeightMatrix(std::vector<std::string> names);

  // Accumulates onto (from, to); non-positive contributions are ignored.
  void add(std::size_t from, std::size_t to, double weight);
  void add(std::string_view from, std::string_view to, double weight);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t index_of(std::string_view name) const;

  double weight(std::size_t from, std::size_t to) const;
  double weight(std::string_view from, std::string_view to) const;

  // Sorted by neighbor index; only positive weights.
  const std::vector<Entry>& out_entries(std::size_t from) const { return rows_.at(from); }
  std::vector<Entry> in_entries(std::size_t to) const;

  std::vector<WeightedNeighbor> out_edges(std::string_view module) const;
  std::vector<WeightedNeighbor> in_edges(std::string_view module) const;

  // TL(v): total outgoing weight, 0 for dangling nodes.
  double total_out_weight(std::size_t from) const;
  double total_out_weight(std::string_view module) const;

  std::size_t entry_count() const noexcept;

  // R + fraction * R^T.
  WeightMatrix with_transpose_added(double fraction) const;
  WeightMatrix scaled(double factor) const;

 private:
  std::vector<Entry>& row(std::size_t from);

  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<Entry>> rows_;
};

// R for the uniform/empirical modes; R + back_fraction * R^T for the
// back-recommendation modes (coefficients applied before the transpose).
WeightMatrix weight_matrix(const DependenceGraph& graph);

}  // namespace docrank
