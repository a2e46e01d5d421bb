#include "docrank/graph.hpp"

#include <algorithm>

namespace docrank {

std::string_view to_string(ModuleKind kind) {
  return kind == ModuleKind::Interface ? "interface" : "class";
}

std::optional<ModuleKind> parse_module_kind(std::string_view text) {
  if (text == "class") return ModuleKind::Class;
  if (text == "interface") return ModuleKind::Interface;
  return std::nullopt;
}

std::string_view to_string(DependenceKind kind) {
  switch (kind) {
    case DependenceKind::Inheritance: return "CI";
    case DependenceKind::Attribute: return "CA";
    case DependenceKind::MethodSignature: return "CM";
    case DependenceKind::MethodCall: return "MM";
  }
  return "?";
}

std::uint64_t& DependenceCounts::operator[](DependenceKind kind) noexcept {
  switch (kind) {
    case DependenceKind::Inheritance: return ci;
    case DependenceKind::Attribute: return ca;
    case DependenceKind::MethodSignature: return cm;
    case DependenceKind::MethodCall: break;
  }
  return mm;
}

std::uint64_t DependenceCounts::operator[](DependenceKind kind) const noexcept {
  return const_cast<DependenceCounts&>(*this)[kind];
}

std::string_view to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::Uniform: return "uniform";
    case WeightMode::Empirical: return "empirical";
    case WeightMode::BackRecommendation: return "back_recommendation";
    case WeightMode::EmpiricalPlusBack: return "empirical_plus_back";
  }
  return "uniform";
}

std::optional<WeightMode> parse_weight_mode(std::string_view text) {
  if (text == "uniform") return WeightMode::Uniform;
  if (text == "empirical") return WeightMode::Empirical;
  if (text == "back_recommendation") return WeightMode::BackRecommendation;
  if (text == "empirical_plus_back") return WeightMode::EmpiricalPlusBack;
  return std::nullopt;
}

double edge_weight(const DependenceCounts& counts, WeightMode mode) noexcept {
  return uses_empirical_coefficients(mode) ? KindCoefficients::empirical().apply(counts)
                                           : KindCoefficients::uniform().apply(counts);
}

// ---------------------------------------------------------------------------
// DependenceGraph

void DependenceGraph::add_node(const ModuleId& module) {
  if (module.name.empty()) throw Error("module name must be non-empty");
  auto [it, inserted] = nodes_.emplace(module.name, module.kind);
  if (!inserted && it->second != module.kind) {
    throw NodeKindConflictError("module '" + module.name + "' declared as both " +
                                std::string(to_string(it->second)) + " and " +
                                std::string(to_string(module.kind)));
  }
}

void DependenceGraph::add_dependence(const ModuleId& from, const ModuleId& to,
                                     DependenceKind kind, std::uint64_t count) {
  DependenceCounts delta;
  delta[kind] = count;
  if (count == 0) throw Error("dependence count must be positive");
  add_counts(from, to, delta);
}

void DependenceGraph::add_counts(const ModuleId& from, const ModuleId& to,
                                 const DependenceCounts& counts) {
  if (from.name == to.name) {
    throw SelfEdgeError("self dependence on '" + from.name + "' is not allowed");
  }
  if (counts.total() == 0) throw Error("dependence counts must not all be zero");

  auto existing = edges_.find(EdgeKey{from.name, to.name});
  const std::uint64_t ci_before = existing == edges_.end() ? 0 : existing->second.ci;
  if (ci_before + counts.ci > 1) {
    throw InheritanceCountError("inheritance count for (" + from.name + ", " + to.name +
                                ") would exceed 1");
  }

  add_node(from);
  add_node(to);
  auto& slot = edges_[EdgeKey{from.name, to.name}];
  slot.ci += counts.ci;
  slot.ca += counts.ca;
  slot.cm += counts.cm;
  slot.mm += counts.mm;
  predecessors_[to.name].insert(from.name);
}

bool DependenceGraph::contains(std::string_view name) const {
  return nodes_.find(name) != nodes_.end();
}

ModuleKind DependenceGraph::kind_of(std::string_view name) const {
  auto it = nodes_.find(name);
  if (it == nodes_.end()) throw UnknownNodeError("unknown module '" + std::string(name) + "'");
  return it->second;
}

std::vector<ModuleId> DependenceGraph::nodes() const {
  std::vector<ModuleId> out;
  out.reserve(nodes_.size());
  for (const auto& [name, kind] : nodes_) out.push_back({name, kind});
  return out;
}

void DependenceGraph::require_node(std::string_view name) const {
  if (!contains(name)) throw UnknownNodeError("unknown module '" + std::string(name) + "'");
}

DependenceCounts DependenceGraph::counts(std::string_view from, std::string_view to) const {
  require_node(from);
  require_node(to);
  auto it = edges_.find(EdgeKey{std::string(from), std::string(to)});
  return it == edges_.end() ? DependenceCounts{} : it->second;
}

double DependenceGraph::edge_weight(std::string_view from, std::string_view to) const {
  return docrank::edge_weight(counts(from, to), settings_.mode);
}

std::vector<WeightedNeighbor> DependenceGraph::out_edges(std::string_view module) const {
  require_node(module);
  std::vector<WeightedNeighbor> out;
  const std::string key(module);
  for (auto it = edges_.lower_bound(EdgeKey{key, std::string()});
       it != edges_.end() && it->first.first == key; ++it) {
    out.push_back({it->first.second, docrank::edge_weight(it->second, settings_.mode)});
  }
  return out;
}

std::vector<WeightedNeighbor> DependenceGraph::in_edges(std::string_view module) const {
  require_node(module);
  std::vector<WeightedNeighbor> out;
  auto preds = predecessors_.find(module);
  if (preds == predecessors_.end()) return out;
  for (const auto& source : preds->second) {
    const auto& c = edges_.at(EdgeKey{source, std::string(module)});
    out.push_back({source, docrank::edge_weight(c, settings_.mode)});
  }
  return out;
}

DependenceGraph DependenceGraph::induced(const std::set<std::string>& keep) const {
  DependenceGraph sub(settings_);
  for (const auto& name : keep) {
    sub.add_node({name, kind_of(name)});
  }
  for (const auto& [key, c] : edges_) {
    if (keep.count(key.first) && keep.count(key.second)) {
      sub.add_counts({key.first, nodes_.at(key.first)}, {key.second, nodes_.at(key.second)}, c);
    }
  }
  return sub;
}

void DependenceGraph::merge(const DependenceGraph& other) {
  for (const auto& [name, kind] : other.nodes_) add_node({name, kind});
  for (const auto& [key, c] : other.edges_) {
    add_counts({key.first, other.nodes_.at(key.first)}, {key.second, other.nodes_.at(key.second)},
               c);
  }
}

// ---------------------------------------------------------------------------
// WeightMatrix

WeightMatrix::WeightMatrix(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw Error("weight matrix node names must be unique");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  rows_.resize(names_.size());
}

std::size_t WeightMatrix::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownNodeError("unknown module '" + std::string(name) + "'");
  return it->second;
}

std::vector<WeightMatrix::Entry>& WeightMatrix::row(std::size_t from) { return rows_.at(from); }

void WeightMatrix::add(std::size_t from, std::size_t to, double weight) {
  if (from >= size() || to >= size()) throw UnknownNodeError("weight matrix index out of range");
  if (from == to) throw SelfEdgeError("weight matrix does not hold self edges");
  if (!(weight > 0.0)) return;
  auto& r = row(from);
  auto it = std::lower_bound(r.begin(), r.end(), to,
                             [](const Entry& e, std::size_t idx) { return e.index < idx; });
  if (it != r.end() && it->index == to) {
    it->weight += weight;
  } else {
    r.insert(it, Entry{to, weight});
  }
}

void WeightMatrix::add(std::string_view from, std::string_view to, double weight) {
  add(index_of(from), index_of(to), weight);
}

double WeightMatrix::weight(std::size_t from, std::size_t to) const {
  const auto& r = rows_.at(from);
  auto it = std::lower_bound(r.begin(), r.end(), to,
                             [](const Entry& e, std::size_t idx) { return e.index < idx; });
  return (it != r.end() && it->index == to) ? it->weight : 0.0;
}

double WeightMatrix::weight(std::string_view from, std::string_view to) const {
  return weight(index_of(from), index_of(to));
}

std::vector<WeightMatrix::Entry> WeightMatrix::in_entries(std::size_t to) const {
  if (to >= size()) throw UnknownNodeError("weight matrix index out of range");
  std::vector<Entry> out;
  for (std::size_t from = 0; from < rows_.size(); ++from) {
    const double w = weight(from, to);
    if (w > 0.0) out.push_back({from, w});
  }
  return out;
}

std::vector<WeightedNeighbor> WeightMatrix::out_edges(std::string_view module) const {
  std::vector<WeightedNeighbor> out;
  for (const auto& e : out_entries(index_of(module))) out.push_back({names_[e.index], e.weight});
  return out;
}

std::vector<WeightedNeighbor> WeightMatrix::in_edges(std::string_view module) const {
  std::vector<WeightedNeighbor> out;
  for (const auto& e : in_entries(index_of(module))) out.push_back({names_[e.index], e.weight});
  return out;
}

double WeightMatrix::total_out_weight(std::size_t from) const {
  double sum = 0.0;
  for (const auto& e : rows_.at(from)) sum += e.weight;
  return sum;
}

double WeightMatrix::total_out_weight(std::string_view module) const {
  return total_out_weight(index_of(module));
}

std::size_t WeightMatrix::entry_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

WeightMatrix WeightMatrix::with_transpose_added(double fraction) const {
  if (fraction < 0.0) throw Error("back-recommendation fraction must be non-negative");
  WeightMatrix out = *this;
  if (fraction == 0.0) return out;
  for (std::size_t from = 0; from < rows_.size(); ++from) {
    for (const auto& e : rows_[from]) out.add(e.index, from, fraction * e.weight);
  }
  return out;
}

WeightMatrix WeightMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error("scale factor must be positive");
  WeightMatrix out = *this;
  for (auto& r : out.rows_) {
    for (auto& e : r) e.weight *= factor;
  }
  return out;
}

WeightMatrix weight_matrix(const DependenceGraph& graph) {
  std::vector<std::string> names;
  names.reserve(graph.node_count());
  for (const auto& node : graph.nodes()) names.push_back(node.name);
  WeightMatrix forward(std::move(names));

  const auto& settings = graph.weight_settings();
  for (const auto& [key, c] : graph.edges()) {
    forward.add(key.first, key.second, edge_weight(c, settings.mode));
  }
  if (uses_back_recommendation(settings.mode)) {
    return forward.with_transpose_added(settings.back_fraction);
  }
  return forward;
}

}  // namespace docrank
