#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docrank/graph.hpp"
#include "docrank/java_ast.hpp"

namespace docrank::java {

// A project-internal type as seen by a receiver or member: the top-level
// module it belongs to and its array rank.
struct StaticType {
  std::string module;
  int dims = 0;
  bool names_type = false;  // the expression names the type itself (static access)

  friend bool operator==(const StaticType&, const StaticType&) = default;
};

// Where a type name is written. `shadowing` holds type parameters and local
// class names that hide project types of the same simple name.
struct NameContext {
  const SourceUnit* unit = nullptr;
  std::string module;  // enclosing top-level module, qualified
  std::vector<std::string> shadowing;
};

// Maps written type names to project modules. Lookup order for a simple name:
// names shadowed in scope, member types of the enclosing module, single-type
// imports, the unit's own package, on-demand imports, then a project-wide
// unique simple name. Qualified names need an exact match (member types
// resolve to their top-level module). Anything else is unresolved.
class ResolutionTable {
 public:
  struct FieldInfo {
    std::string name;
    std::optional<StaticType> type;
  };
  struct MethodInfo {
    std::string name;
    std::optional<StaticType> return_type;
  };
  struct ModuleInfo {
    ModuleId id;
    std::string package_name;
    std::string simple_name;
    std::string declaring_path;
    std::vector<std::string> supertypes;  // resolved, extends first
    std::optional<std::string> superclass;
    std::vector<FieldInfo> fields;
    std::vector<MethodInfo> methods;
  };

  // Duplicate qualified declarations keep the first by path; the rest are
  // reported through `diagnostics`.
  static ResolutionTable build(std::span<const SourceUnit> units,
                               std::vector<std::string>* diagnostics = nullptr);

  std::optional<ModuleId> resolve(std::string_view written, const NameContext& ctx) const;
  std::optional<ModuleId> find(std::string_view qualified) const;

  const ModuleInfo* module(std::string_view qualified) const;
  std::vector<ModuleId> modules() const;

  // True when `decl` in `unit` is the declaration that owns its module.
  bool owns(const SourceUnit& unit, const TypeDecl& decl) const;

  // Searches the module and then its project supertypes, breadth first.
  std::optional<StaticType> field_type(std::string_view module, std::string_view field,
                                       bool* found = nullptr) const;
  // Return type when every overload named `method` agrees on one project type.
  std::optional<StaticType> method_return(std::string_view module, std::string_view method) const;
  // The first module (the module itself, then supertypes) declaring `method`.
  std::optional<std::string> method_owner(std::string_view module, std::string_view method) const;

  static std::string qualify(std::string_view package_name, std::string_view name);

 private:
  std::optional<ModuleId> resolve_simple(std::string_view name, const NameContext& ctx) const;
  std::vector<std::string> ancestry(std::string_view module) const;

  std::map<std::string, ModuleInfo, std::less<>> modules_;
  // Qualified name of every top-level and member type -> owning top-level module.
  std::map<std::string, std::string, std::less<>> qualified_;
  // Simple name of top-level types -> qualified names.
  std::map<std::string, std::vector<std::string>, std::less<>> simple_;
};

struct DependencePair {
  ModuleId from;
  ModuleId to;

  friend bool operator==(const DependencePair&, const DependencePair&) = default;
};

// Each returns one entry per counted occurrence (a multiset), never a self pair.
std::vector<DependencePair> count_ci(const SourceUnit& unit, const ResolutionTable& table);
std::vector<DependencePair> count_ca(const SourceUnit& unit, const ResolutionTable& table);
std::vector<DependencePair> count_cm(const SourceUnit& unit, const ResolutionTable& table);
std::vector<DependencePair> count_mm(const SourceUnit& unit, const ResolutionTable& table);

// Adds every counted dependence of the units to a graph holding all modules.
DependenceGraph build_graph(std::span<const SourceUnit> units, const ResolutionTable& table);

}  // namespace docrank::java

namespace docrank {

struct ExtractionOptions {
  bool strict = false;       // abort on the first unparsable file
  unsigned threads = 0;      // parser threads; 0 picks hardware concurrency
};

struct FileDiagnostic {
  std::string path;
  std::string message;
};

struct ExtractionResult {
  DependenceGraph graph;
  std::size_t files_seen = 0;
  std::size_t files_parsed = 0;
  std::vector<FileDiagnostic> diagnostics;  // skipped files and duplicate declarations
};

// Extracts the dependence graph of all `.java` files below `root`.
// Non-strict mode skips files that fail to parse and reports them; strict mode
// rethrows the first ParseError in path order.
ExtractionResult extract_project(const std::filesystem::path& root,
                                 const ExtractionOptions& options = {});

// Same, over in-memory sources keyed by path.
ExtractionResult extract_sources(const std::map<std::string, std::string>& sources,
                                 const ExtractionOptions& options = {});

}  // namespace docrank
