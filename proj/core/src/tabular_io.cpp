#include "docrank/tabular_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "text_util.hpp"

namespace docrank {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Splits one CSV record; double-quoted fields may contain commas and `""`.
std::vector<std::string> csv_record(std::string_view line, const std::string& source,
                                    std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"' && detail::trim(field).empty()) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (c == ',') {
      out.push_back(was_quoted ? field : std::string(detail::trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(source, line_no, 0, "unterminated quoted field");
  out.push_back(was_quoted ? field : std::string(detail::trim(field)));
  return out;
}

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

LabelSet parse_labels(std::string_view text, const std::string& source) {
  LabelSet labels;
  std::size_t line_no = 0;
  bool first_record = true;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    const auto fields = csv_record(line, source, line_no);
    if (first_record) {
      first_record = false;
      if (fields.size() == 2 && lower(fields[0]) == "module" && lower(fields[1]) == "label") {
        continue;
      }
    }
    if (fields.size() != 2) {
      throw ParseError(source, line_no, 0,
                       "expected 2 fields (module,label), found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(source, line_no, 1, "empty module name");
    const auto label = lower(fields[1]);
    bool important = false;
    if (label == "important" || label == "1") {
      important = true;
    } else if (label != "non_important" && label != "0") {
      throw ParseError(source, line_no, 2,
                       "invalid label '" + fields[1] + "' (expected important, non_important, 1 or 0)");
    }
    if (labels.contains(fields[0])) {
      throw ParseError(source, line_no, 1, "duplicate label for module '" + fields[0] + "'");
    }
    labels.set(fields[0], important);
  }
  return labels;
}

LabelSet read_labels_file(const std::filesystem::path& path) {
  return parse_labels(detail::read_file(path), path.string());
}

std::string format_ranking_csv(const RankedList& ranked, std::string_view provenance) {
  std::string out = "# " + std::string(kRankingFormat);
  if (!provenance.empty()) out += " " + std::string(provenance);
  out += "\nmodule,score,rank\n";
  for (const auto& e : ranked) {
    out += csv_field(e.module) + "," + detail::format_significant(e.score, 10) + "," +
           std::to_string(e.rank) + "\n";
  }
  return out;
}

std::string format_selection_csv(const RankedList& ranked, const ThresholdSelection& selection,
                                 std::string_view provenance) {
  std::string out = "# " + std::string(kSelectionFormat);
  if (!provenance.empty()) out += " " + std::string(provenance);
  out += " k=" + detail::format_double_exact(selection.k_percent);
  out += "\nmodule,score,rank,selected\n";
  for (const auto& e : ranked) {
    out += csv_field(e.module) + "," + detail::format_significant(e.score, 10) + "," +
           std::to_string(e.rank) + "," + (selection.selected.count(e.module) ? "1" : "0") + "\n";
  }
  return out;
}

ScoreVector parse_ranking_csv(std::string_view text, const std::string& source) {
  std::map<std::string, double> scores;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    const auto fields = csv_record(line, source, line_no);
    if (!header_seen) {
      if (fields.size() < 2 || lower(fields[0]) != "module" || lower(fields[1]) != "score") {
        throw ParseError(source, line_no, 1, "expected header 'module,score,...'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 2) throw ParseError(source, line_no, 0, "expected at least module,score");
    double value = 0.0;
    const auto& s = fields[1];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(source, line_no, 2, "invalid score '" + s + "'");
    }
    if (!scores.emplace(fields[0], value).second) {
      throw ParseError(source, line_no, 1, "duplicate module '" + fields[0] + "'");
    }
  }
  if (!header_seen) throw ParseError(source, line_no, 0, "missing 'module,score' header");
  ScoreVector out;
  for (auto& [name, value] : scores) {
    out.names.push_back(name);
    out.scores.push_back(value);
  }
  return out;
}

}  // namespace docrank
