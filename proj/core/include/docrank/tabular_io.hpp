#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "docrank/evaluation.hpp"
#include "docrank/pagerank.hpp"
#include "docrank/ranking.hpp"

namespace docrank {

inline constexpr std::string_view kRankingFormat = "docrank-ranking v1";
inline constexpr std::string_view kSelectionFormat = "docrank-selection v1";

// CSV `module,label`; the header row is optional, `#` lines are comments.
// Labels: important / non_important, or 1 / 0. Throws ParseError.
LabelSet parse_labels(std::string_view text, const std::string& source = {});
LabelSet read_labels_file(const std::filesystem::path& path);

// `# docrank-ranking v1 <provenance>` then `module,score,rank` rows, scores
// with 10 significant digits.
std::string format_ranking_csv(const RankedList& ranked, std::string_view provenance);

// Adds the `selected` column (1 for the top-k% entries).
std::string format_selection_csv(const RankedList& ranked, const ThresholdSelection& selection,
                                 std::string_view provenance);

// Reads either CSV form back into scores (sorted by module). Throws ParseError.
ScoreVector parse_ranking_csv(std::string_view text, const std::string& source = {});

// Quotes a CSV field when it contains a separator, quote or line break.
std::string csv_field(std::string_view text);

}  // namespace docrank
