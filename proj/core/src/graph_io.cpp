#include "docrank/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "text_util.hpp"

namespace docrank {

std::string serialize_graph(const DependenceGraph& graph) {
  std::string out(kGraphHeader);
  out += '\n';

  const auto& settings = graph.weight_settings();
  if (settings != WeightSettings{}) {
    out += "M\t";
    out += to_string(settings.mode);
    out += '\t';
    out += detail::format_double_exact(settings.back_fraction);
    out += '\n';
  }
  for (const auto& node : graph.nodes()) {
    out += "N\t" + node.name + '\t' + std::string(to_string(node.kind)) + '\n';
  }
  for (const auto& [key, c] : graph.edges()) {
    out += "E\t" + key.first + '\t' + key.second + '\t' + std::to_string(c.ci) + '\t' +
           std::to_string(c.ca) + '\t' + std::to_string(c.cm) + '\t' + std::to_string(c.mm) +
           '\n';
  }
  return out;
}

namespace {

std::uint64_t parse_count(std::string_view field, const std::string& source, std::size_t line,
                          std::size_t field_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(source, line, field_no,
                     "field " + std::to_string(field_no) + ": expected a non-negative integer, got '" +
                         std::string(field) + "'");
  }
  return value;
}

}  // namespace

DependenceGraph deserialize_graph(std::string_view text, const std::string& source_name) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || detail::trim(lines.front()) != kGraphHeader) {
    throw ParseError(source_name, 1, 0,
                     "missing header '" + std::string(kGraphHeader) + "'");
  }

  DependenceGraph graph;
  std::set<std::string> declared;
  std::set<std::pair<std::string, std::string>> seen_edges;
  bool seen_mode = false;
  bool seen_records = false;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = detail::split_fields(line);
    const auto& tag = fields.front();
    auto expect_fields = [&](std::size_t n) {
      if (fields.size() != n) {
        throw ParseError(source_name, line_no, 0,
                         "'" + std::string(tag) + "' record expects " + std::to_string(n - 1) +
                             " fields, got " + std::to_string(fields.size() - 1));
      }
    };

    if (tag == "M") {
      expect_fields(3);
      if (seen_mode || seen_records) {
        throw ParseError(source_name, line_no, 0, "'M' record must appear once, before N/E records");
      }
      auto mode = parse_weight_mode(fields[1]);
      if (!mode) {
        throw ParseError(source_name, line_no, 1,
                         "field 1: unknown weight mode '" + std::string(fields[1]) + "'");
      }
      double fraction = 0.0;
      auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), fraction);
      if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() || !(fraction >= 0.0)) {
        throw ParseError(source_name, line_no, 2,
                         "field 2: expected a non-negative back fraction, got '" +
                             std::string(fields[2]) + "'");
      }
      graph.set_weight_settings({*mode, fraction});
      seen_mode = true;
    } else if (tag == "N") {
      expect_fields(3);
      seen_records = true;
      auto kind = parse_module_kind(fields[2]);
      if (!kind) {
        throw ParseError(source_name, line_no, 2,
                         "field 2: expected 'class' or 'interface', got '" + std::string(fields[2]) + "'");
      }
      std::string name(fields[1]);
      if (!declared.insert(name).second) {
        throw ParseError(source_name, line_no, 1, "field 1: duplicate node '" + name + "'");
      }
      graph.add_node({name, *kind});
    } else if (tag == "E") {
      expect_fields(7);
      seen_records = true;
      std::string from(fields[1]);
      std::string to(fields[2]);
      for (std::size_t f = 1; f <= 2; ++f) {
        if (!declared.count(std::string(fields[f]))) {
          throw ParseError(source_name, line_no, f,
                           "field " + std::to_string(f) + ": undeclared node '" +
                               std::string(fields[f]) + "'");
        }
      }
      if (from == to) {
        throw ParseError(source_name, line_no, 2, "self edge on '" + from + "'");
      }
      if (!seen_edges.emplace(from, to).second) {
        throw ParseError(source_name, line_no, 0, "duplicate edge '" + from + "' -> '" + to + "'");
      }
      DependenceCounts c;
      c.ci = parse_count(fields[3], source_name, line_no, 3);
      c.ca = parse_count(fields[4], source_name, line_no, 4);
      c.cm = parse_count(fields[5], source_name, line_no, 5);
      c.mm = parse_count(fields[6], source_name, line_no, 6);
      if (c.ci > 1) {
        throw ParseError(source_name, line_no, 3, "field 3: inheritance count must be 0 or 1");
      }
      if (c.total() == 0) {
        throw ParseError(source_name, line_no, 0, "edge with all-zero counts");
      }
      graph.add_counts({from, graph.kind_of(from)}, {to, graph.kind_of(to)}, c);
    } else {
      throw ParseError(source_name, line_no, 0, "unknown record type '" + std::string(tag) + "'");
    }
  }
  return graph;
}

DependenceGraph read_graph_file(const std::filesystem::path& path) {
  return deserialize_graph(detail::read_file(path), path.string());
}

void write_graph_file(const std::filesystem::path& path, const DependenceGraph& graph) {
  detail::write_file(path, serialize_graph(graph));
}

}  // namespace docrank
