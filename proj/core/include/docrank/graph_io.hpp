#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "docrank/graph.hpp"

namespace docrank {

inline constexpr std::string_view kGraphHeader = "#docrank-graph v1";

// Canonical text form: header, optional `M` weight-mode record, then `N`
// node records and `E` edge records sorted by name, tab separated.
std::string serialize_graph(const DependenceGraph& graph);

// Throws ParseError naming the line and the offending field.
DependenceGraph deserialize_graph(std::string_view text, const std::string& source_name = {});

DependenceGraph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const DependenceGraph& graph);

}  // namespace docrank
